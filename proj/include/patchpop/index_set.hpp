#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "patchpop/rng.hpp"

namespace patchpop {

using Index = std::uint32_t;

/// Immutable set of bit positions, kept as a strictly increasing sequence.
///
/// Patches label the edges of the population tree and are the output of
/// every variation operator. The weight of an edge is the patch size.
class Patch {
 public:
  Patch() = default;
  Patch(std::initializer_list<Index> indices);

  /// Takes ownership of an already strictly increasing sequence.
  /// Throws std::invalid_argument if the order is violated.
  static Patch from_sorted(std::vector<Index> indices);
  /// Sorts the indices; throws std::invalid_argument on duplicates.
  static Patch from_unsorted(std::vector<Index> indices);

  std::span<const Index> indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  /// True when every index is below n.
  bool fits(std::size_t n) const { return indices_.empty() || indices_.back() < n; }

  /// Symmetric difference of two patches.
  Patch operator^(const Patch& other) const;

  friend bool operator==(const Patch&, const Patch&) = default;

 private:
  explicit Patch(std::vector<Index> indices, int) : indices_(std::move(indices)) {}

  std::vector<Index> indices_;
};

std::string to_string(const Patch& p);

/// Fixed-length genotype, one byte per position.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t n) : bits_(n, 0) {}

  static BitString random(std::size_t n, Rng& rng);
  /// Parses a string of '0' and '1' characters.
  static BitString parse(std::string_view text);

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool value) { bits_[i] = value ? 1 : 0; }
  void flip(std::size_t i) { bits_[i] ^= 1; }

  std::span<const std::uint8_t> data() const { return bits_; }

  std::string to_string() const;

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Flips every position listed in the patch. Throws std::out_of_range when
/// the patch does not fit the string; the string is left untouched then.
void apply(BitString& bits, const Patch& patch);

/// Positions at which two equal-length strings differ.
Patch difference(const BitString& a, const BitString& b);

/// Mutable subset of [0, n) backed by a permutation and its inverse.
///
/// Members are perm[0..size). Toggle, membership, size and sampling of a
/// uniformly random absent or present element are all O(1).
class IndexSet {
 public:
  explicit IndexSet(std::size_t n);

  std::size_t universe() const { return perm_.size(); }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  void clear() { size_ = 0; }

  void toggle(Index e);
  bool contains(Index e) const;

  /// Adds one element chosen uniformly among the absent ones and returns it.
  /// Throws std::length_error when the set is full.
  Index add_random_absent(Rng& rng);

  /// Removes n_remove uniformly chosen members, then adds n_add uniformly
  /// chosen elements that were absent before the call.
  void flip_random(std::size_t n_add, std::size_t n_remove, Rng& rng);

  /// Toggles every index of the patch (symmetric difference).
  void merge(const Patch& patch);

  /// Current members in sorted order.
  Patch snapshot() const;

  /// Current members in internal (unsorted) order.
  std::span<const Index> members() const { return {perm_.data(), size_}; }

  /// perm/inv consistency; O(n), for tests.
  bool check_invariants() const;

 private:
  void check_index(Index e) const;
  void swap_positions(std::size_t i, std::size_t j);

  std::vector<Index> perm_;
  std::vector<Index> inv_;
  std::size_t size_ = 0;
};

}  // namespace patchpop
