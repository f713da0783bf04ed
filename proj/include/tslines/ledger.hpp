#pragma once

// Index bookkeeping for real surfaces in a complex surface: Lai's formula
// Σ I(γ) = χ(TΣ) + χ(NΣ) and its behaviour under connect sum with RP².

#include <span>
#include <string>
#include <vector>

namespace tslines {

struct IndexedPoint {
  std::string label;
  int index = 0;
  friend bool operator==(const IndexedPoint&, const IndexedPoint&) = default;
};

struct TopLedger {
  int chi_t = 0;
  int chi_n = 0;
  std::vector<IndexedPoint> inventory;

  int index_sum() const;
  bool consistent() const { return index_sum() == chi_t + chi_n; }
};

struct LaiSum {
  int total = 0;      // χT + χN
  int index_sum = 0;  // Σ I over the inventory
  bool consistent = false;
};

LaiSum lai_sum(const TopLedger& l);

/// Removes the k labelled hyperbolic points by totally real blow-up:
/// χT -= k, χN += 2k. Throws NotHyperbolic / BadInput.
TopLedger connect_sum_rp2(const TopLedger& l, int k, std::span<const std::string> removed);

/// Arithmetic chain from an umbilic of index 2 + k/2 to a closed surface
/// with a single complex point of index 4 + k.
struct ScenarioReport {
  int k = 0;
  int pairs = 0;
  int umbilic_index_doubled = 0;  // 2i = 4 + k
  int complex_index = 0;          // I = 2i
  int annulus_sum = 0;            // -k
  TopLedger closed;               // Σ' before cancellation
  TopLedger cancelled;            // elliptic/hyperbolic pairs removed
  TopLedger blown_up;             // Σ₁ = Σ' # k RP²
  int lai_total = 0;
  bool identities_hold = false;
};

/// `pairs` elliptic/hyperbolic pairs sit in the annulus before cancellation.
ScenarioReport reformulation_scenario(int k, int pairs = 1);

}  // namespace tslines
