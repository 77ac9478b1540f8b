#include "cograph/order_list.hpp"

#include <atomic>
#include <cmath>

#include "cograph/error.hpp"

namespace cograph {

namespace {

// Tags live strictly inside (0, kSpace); 0 and kSpace act as virtual ends.
constexpr int kBits = 62;
constexpr std::uint64_t kSpace = std::uint64_t{1} << kBits;
constexpr double kDensityBase = 1.5;

std::atomic<std::uint32_t> next_list_id{1};

}  // namespace

OrderList::OrderList() : id_(next_list_id.fetch_add(1, std::memory_order_relaxed)) {}

std::uint32_t OrderList::acquire() {
  std::uint32_t s;
  if (!free_.empty()) {
    s = free_.back();
    free_.pop_back();
  } else {
    s = static_cast<std::uint32_t>(slots_.size());
    slots_.emplace_back();
  }
  slots_[s].live = true;
  slots_[s].prev = slots_[s].next = kNil;
  ++size_;
  return s;
}

void OrderList::link_after(std::uint32_t anchor, std::uint32_t fresh) {
  auto& f = slots_[fresh];
  f.prev = anchor;
  f.next = anchor == kNil ? head_ : slots_[anchor].next;
  if (anchor == kNil) {
    head_ = fresh;
  } else {
    slots_[anchor].next = fresh;
  }
  if (f.next == kNil) {
    tail_ = fresh;
  } else {
    slots_[f.next].prev = fresh;
  }
}

void OrderList::assign_tag(std::uint32_t fresh) {
  const auto& f = slots_[fresh];
  const std::uint64_t lo = f.prev == kNil ? 0 : slots_[f.prev].tag;
  const std::uint64_t hi = f.next == kNil ? kSpace : slots_[f.next].tag;
  if (hi - lo >= 2) {
    slots_[fresh].tag = lo + (hi - lo) / 2;
    return;
  }
  relabel_around(fresh);
}

void OrderList::relabel_around(std::uint32_t fresh) {
  ++relabels_;
  const std::uint32_t pivot = slots_[fresh].prev != kNil ? slots_[fresh].prev : slots_[fresh].next;
  const std::uint64_t centre = slots_[pivot].tag;
  std::uint32_t first = fresh;
  std::uint32_t last = fresh;
  std::size_t count = 1;
  double threshold = 1.0;
  for (int i = 1; i <= kBits; ++i) {
    threshold *= kDensityBase;
    const std::uint64_t width = std::uint64_t{1} << i;
    const std::uint64_t lo = centre & ~(width - 1);
    const std::uint64_t hi = lo + width;
    while (slots_[first].prev != kNil && slots_[slots_[first].prev].tag >= lo) {
      first = slots_[first].prev;
      ++count;
    }
    while (slots_[last].next != kNil && slots_[slots_[last].next].tag < hi) {
      last = slots_[last].next;
      ++count;
    }
    if (static_cast<double>(count) * threshold >= static_cast<double>(width)) continue;
    const std::uint64_t step = width / (count + 1);
    std::uint64_t tag = lo;
    for (std::uint32_t s = first;; s = slots_[s].next) {
      tag += step;
      slots_[s].tag = tag;
      if (s == last) break;
    }
    return;
  }
  relabel_all();
}

void OrderList::relabel_all() {
  const std::uint64_t step = kSpace / (size_ + 1);
  std::uint64_t tag = 0;
  for (std::uint32_t s = head_; s != kNil; s = slots_[s].next) {
    tag += step;
    slots_[s].tag = tag;
  }
}

OrderList::Handle OrderList::insert_front() {
  const std::uint32_t s = acquire();
  link_after(kNil, s);
  assign_tag(s);
  return handle_of(s);
}

OrderList::Handle OrderList::insert_after(Handle anchor) {
  require(anchor);
  const std::uint32_t s = acquire();
  link_after(anchor.slot, s);
  assign_tag(s);
  return handle_of(s);
}

void OrderList::erase(Handle h) {
  require(h);
  auto& e = slots_[h.slot];
  if (e.prev == kNil) {
    head_ = e.next;
  } else {
    slots_[e.prev].next = e.next;
  }
  if (e.next == kNil) {
    tail_ = e.prev;
  } else {
    slots_[e.next].prev = e.prev;
  }
  e.live = false;
  ++e.generation;
  e.prev = e.next = kNil;
  free_.push_back(h.slot);
  --size_;
}

bool OrderList::contains(Handle h) const noexcept {
  return h.list == id_ && h.slot < slots_.size() && slots_[h.slot].live &&
         slots_[h.slot].generation == h.generation;
}

void OrderList::require(Handle h) const {
  if (h.list != id_) throw ContractError("handle belongs to another order list");
  if (!contains(h)) throw ContractError("stale order-list handle");
}

bool OrderList::precedes(Handle u, Handle v) const {
  require(u);
  require(v);
  if (u.slot == v.slot) throw ContractError("precedes() needs two distinct elements");
  return slots_[u.slot].tag < slots_[v.slot].tag;
}

std::vector<OrderList::Handle> OrderList::elements() const {
  std::vector<Handle> out;
  out.reserve(size_);
  for (std::uint32_t s = head_; s != kNil; s = slots_[s].next) out.push_back(handle_of(s));
  return out;
}

std::uint64_t OrderList::tag_of(Handle h) const {
  require(h);
  return slots_[h.slot].tag;
}

}  // namespace cograph
