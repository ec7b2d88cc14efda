#include "epsnim/subtraction_set.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <stdexcept>

namespace epsnim {

namespace {

bool in_tail(const ArithTail& t, std::int64_t x) {
  return x >= t.start && (x - t.start) % t.step == 0;
}

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool consume(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool consume_union() {
    skip_ws();
    if (pos < text.size() && (text[pos] == 'U' || text[pos] == 'u')) {
      ++pos;
      return true;
    }
    // UTF-8 for the union sign
    if (text.substr(pos, 3) == "\xe2\x88\xaa") {
      pos += 3;
      return true;
    }
    return false;
  }
  std::int64_t integer() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw std::invalid_argument("expected integer in set expression");
    return std::stoll(std::string(text.substr(start, pos - start)));
  }
  bool consume_word(std::string_view w) {
    skip_ws();
    if (text.substr(pos, w.size()) == w) {
      pos += w.size();
      return true;
    }
    return false;
  }
};

}  // namespace

SubtractionSet SubtractionSet::finite(std::vector<std::int64_t> members) {
  SubtractionSet s;
  s.base_ = std::move(members);
  s.normalize_and_validate();
  return s;
}

SubtractionSet SubtractionSet::with_tail(std::vector<std::int64_t> base, ArithTail tail) {
  SubtractionSet s;
  s.base_ = std::move(base);
  s.tail_ = tail;
  s.normalize_and_validate();
  return s;
}

void SubtractionSet::normalize_and_validate() {
  if (tail_) {
    if (tail_->step < 1) throw std::invalid_argument("tail step must be >= 1");
    if (tail_->start < 2) throw std::invalid_argument("set members must be >= 2");
  }
  for (std::int64_t v : base_) {
    if (v < 2) throw std::invalid_argument("set members must be >= 2");
  }
  std::sort(base_.begin(), base_.end());
  base_.erase(std::unique(base_.begin(), base_.end()), base_.end());
  if (tail_) {
    std::erase_if(base_, [&](std::int64_t v) { return in_tail(*tail_, v); });
  }
  if (base_.empty() && !tail_) throw std::invalid_argument("removable set must be nonempty");
}

std::int64_t SubtractionSet::min() const {
  std::int64_t m = tail_ ? tail_->start : std::numeric_limits<std::int64_t>::max();
  if (!base_.empty()) m = std::min(m, base_.front());
  return m;
}

std::int64_t SubtractionSet::max() const {
  if (tail_) throw std::logic_error("max() is undefined for an infinite set");
  return base_.back();
}

bool SubtractionSet::contains(std::int64_t x) const {
  if (tail_ && in_tail(*tail_, x)) return true;
  return std::binary_search(base_.begin(), base_.end(), x);
}

std::vector<std::int64_t> SubtractionSet::members_up_to(std::int64_t n) const {
  std::vector<std::int64_t> out;
  for (std::int64_t v : base_) {
    if (v > n) break;
    out.push_back(v);
  }
  if (tail_) {
    for (std::int64_t v = tail_->start; v <= n; v += tail_->step) out.push_back(v);
    std::sort(out.begin(), out.end());
  }
  return out;
}

SubtractionSet SubtractionSet::parse(std::string_view text) {
  Cursor cur{text};
  std::vector<std::int64_t> base;
  std::optional<ArithTail> tail;

  auto parse_group = [&] {
    if (!cur.consume('{')) throw std::invalid_argument("expected '{' in set expression");
    if (cur.consume('}')) return;  // empty group contributes nothing
    while (true) {
      std::int64_t first = cur.integer();
      if (cur.consume_word("..")) {
        if (!cur.consume_word("step")) throw std::invalid_argument("expected 'step' after '..'");
        std::int64_t step = cur.integer();
        if (tail) throw std::invalid_argument("at most one arithmetic tail is allowed");
        tail = ArithTail{first, step};
      } else {
        base.push_back(first);
      }
      if (cur.consume(',')) continue;
      if (cur.consume('}')) break;
      throw std::invalid_argument("expected ',' or '}' in set expression");
    }
  };

  parse_group();
  while (!cur.done()) {
    if (!cur.consume_union()) throw std::invalid_argument("expected union sign between groups");
    parse_group();
  }

  SubtractionSet s;
  s.base_ = std::move(base);
  s.tail_ = tail;
  s.normalize_and_validate();
  return s;
}

std::string SubtractionSet::to_string() const {
  std::string out;
  if (!base_.empty() || !tail_) {
    out += '{';
    for (std::size_t i = 0; i < base_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(base_[i]);
    }
    out += '}';
  }
  if (tail_) {
    if (!out.empty()) out += " \xe2\x88\xaa ";
    out += '{';
    out += std::to_string(tail_->start);
    out += "..step";
    out += std::to_string(tail_->step);
    out += '}';
  }
  return out;
}

}  // namespace epsnim
