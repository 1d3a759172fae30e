#include "patchpop/index_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace patchpop {

Patch::Patch(std::initializer_list<Index> indices) {
  *this = from_unsorted(std::vector<Index>(indices));
}

Patch Patch::from_sorted(std::vector<Index> indices) {
  if (std::adjacent_find(indices.begin(), indices.end(), std::greater_equal<>()) != indices.end())
    throw std::invalid_argument("patch indices must be strictly increasing");
  return Patch(std::move(indices), 0);
}

Patch Patch::from_unsorted(std::vector<Index> indices) {
  std::sort(indices.begin(), indices.end());
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
    throw std::invalid_argument("patch contains duplicate indices");
  return Patch(std::move(indices), 0);
}

Patch Patch::operator^(const Patch& other) const {
  std::vector<Index> out;
  out.reserve(size() + other.size());
  std::set_symmetric_difference(begin(), end(), other.begin(), other.end(),
                                std::back_inserter(out));
  return Patch(std::move(out), 0);
}

std::string to_string(const Patch& p) {
  std::string s = "{";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(p.indices()[i]);
  }
  s += '}';
  return s;
}

BitString BitString::random(std::size_t n, Rng& rng) {
  BitString b(n);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 64 == 0) word = rng();
    b.bits_[i] = static_cast<std::uint8_t>(word & 1);
    word >>= 1;
  }
  return b;
}

BitString BitString::parse(std::string_view text) {
  BitString b(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '0' && text[i] != '1')
      throw std::invalid_argument("bit string may contain only '0' and '1'");
    b.bits_[i] = text[i] == '1';
  }
  return b;
}

std::string BitString::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) s[i] = '1';
  return s;
}

void apply(BitString& bits, const Patch& patch) {
  if (!patch.fits(bits.size())) throw std::out_of_range("patch index beyond bit string length");
  for (Index i : patch) bits.flip(i);
}

Patch difference(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) throw std::invalid_argument("bit strings differ in length");
  std::vector<Index> out;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) out.push_back(static_cast<Index>(i));
  return Patch::from_sorted(std::move(out));
}

IndexSet::IndexSet(std::size_t n) : perm_(n), inv_(n) {
  if (n == 0) throw std::invalid_argument("index set universe must be non-empty");
  if (n > 0x7fffffffu) throw std::invalid_argument("index set universe too large");
  for (std::size_t i = 0; i < n; ++i) perm_[i] = inv_[i] = static_cast<Index>(i);
}

void IndexSet::check_index(Index e) const {
  if (e >= perm_.size()) throw std::out_of_range("index outside the set universe");
}

void IndexSet::swap_positions(std::size_t i, std::size_t j) {
  const Index a = perm_[i];
  const Index b = perm_[j];
  perm_[i] = b;
  perm_[j] = a;
  inv_[b] = static_cast<Index>(i);
  inv_[a] = static_cast<Index>(j);
}

void IndexSet::toggle(Index e) {
  check_index(e);
  const std::size_t pos = inv_[e];
  if (pos < size_) {
    swap_positions(pos, size_ - 1);
    --size_;
  } else {
    swap_positions(pos, size_);
    ++size_;
  }
}

bool IndexSet::contains(Index e) const {
  check_index(e);
  return inv_[e] < size_;
}

Index IndexSet::add_random_absent(Rng& rng) {
  if (size_ == perm_.size()) throw std::length_error("index set is full");
  const std::size_t j = size_ + rng.below(perm_.size() - size_);
  swap_positions(size_, j);
  return perm_[size_++];
}

void IndexSet::flip_random(std::size_t n_add, std::size_t n_remove, Rng& rng) {
  const std::size_t n = perm_.size();
  const std::size_t s = size_;
  if (n_remove > s) throw std::invalid_argument("cannot remove more elements than present");
  if (n_add > n - s) throw std::invalid_argument("cannot add more elements than absent");

  // Removed members are parked at [s - n_remove, s), additions are drawn
  // from the originally absent region [s, n) and land at [s, s + n_add).
  for (std::size_t i = 0; i < n_remove; ++i) {
    const std::size_t last = s - 1 - i;
    swap_positions(rng.below(last + 1), last);
  }
  for (std::size_t i = 0; i < n_add; ++i) {
    const std::size_t pos = s + i;
    swap_positions(pos, pos + rng.below(n - pos));
  }
  // Make the additions contiguous with the kept members.
  const std::size_t kept = s - n_remove;
  const std::size_t swaps = std::min(n_add, n_remove);
  for (std::size_t i = 0; i < swaps; ++i) swap_positions(kept + i, s + n_add - 1 - i);
  size_ = kept + n_add;
}

void IndexSet::merge(const Patch& patch) {
  if (!patch.fits(perm_.size())) throw std::out_of_range("patch index outside the set universe");
  for (Index e : patch) {
    const std::size_t pos = inv_[e];
    if (pos < size_) {
      swap_positions(pos, size_ - 1);
      --size_;
    } else {
      swap_positions(pos, size_);
      ++size_;
    }
  }
}

Patch IndexSet::snapshot() const {
  std::vector<Index> out(perm_.begin(), perm_.begin() + static_cast<std::ptrdiff_t>(size_));
  std::sort(out.begin(), out.end());
  return Patch::from_sorted(std::move(out));
}

bool IndexSet::check_invariants() const {
  if (size_ > perm_.size()) return false;
  for (std::size_t i = 0; i < perm_.size(); ++i) {
    if (perm_[i] >= perm_.size() || inv_[perm_[i]] != i) return false;
  }
  return true;
}

}  // namespace patchpop
