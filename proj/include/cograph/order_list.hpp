#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cograph {

// Order-maintenance list: elements carry integer tags whose order matches the
// list order, so precedes() is one comparison. Inserting into a full gap
// relabels the smallest enclosing power-of-two tag window whose density is
// below 1.5^-i (i = log2 of the window width); amortized cost is logarithmic
// in the list size.
class OrderList {
 public:
  struct Handle {
    std::uint32_t list = 0;
    std::uint32_t slot = 0;
    std::uint32_t generation = 0;
    friend bool operator==(const Handle&, const Handle&) = default;
  };

  OrderList();
  OrderList(OrderList&&) noexcept = default;
  OrderList& operator=(OrderList&&) noexcept = default;
  OrderList(const OrderList&) = delete;
  OrderList& operator=(const OrderList&) = delete;

  Handle insert_front();
  Handle insert_after(Handle anchor);
  void erase(Handle h);

  // Throws ContractError for stale handles, u == v, or handles of another list.
  bool precedes(Handle u, Handle v) const;

  bool contains(Handle h) const noexcept;
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  // Handles in list order.
  std::vector<Handle> elements() const;

  std::size_t relabel_count() const noexcept { return relabels_; }
  std::uint64_t tag_of(Handle h) const;

 private:
  static constexpr std::uint32_t kNil = 0xffffffffu;

  struct Slot {
    std::uint64_t tag = 0;
    std::uint32_t prev = kNil;
    std::uint32_t next = kNil;
    std::uint32_t generation = 0;
    bool live = false;
  };

  std::uint32_t acquire();
  void link_after(std::uint32_t anchor, std::uint32_t fresh);
  void assign_tag(std::uint32_t fresh);
  void relabel_around(std::uint32_t fresh);
  void relabel_all();
  void require(Handle h) const;
  Handle handle_of(std::uint32_t slot) const { return {id_, slot, slots_[slot].generation}; }

  std::vector<Slot> slots_;
  std::vector<std::uint32_t> free_;
  std::uint32_t head_ = kNil;
  std::uint32_t tail_ = kNil;
  std::size_t size_ = 0;
  std::size_t relabels_ = 0;
  std::uint32_t id_ = 0;
};

}  // namespace cograph
