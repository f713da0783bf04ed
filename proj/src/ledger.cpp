#include "tslines/ledger.hpp"

#include <algorithm>
#include <numeric>

#include "tslines/error.hpp"

namespace tslines {

int TopLedger::index_sum() const {
  return std::accumulate(inventory.begin(), inventory.end(), 0,
                         [](int s, const IndexedPoint& p) { return s + p.index; });
}

LaiSum lai_sum(const TopLedger& l) {
  const int total = l.chi_t + l.chi_n;
  const int sum = l.index_sum();
  return {total, sum, total == sum};
}

TopLedger connect_sum_rp2(const TopLedger& l, int k, std::span<const std::string> removed) {
  if (k < 0) throw Error(ErrorCode::BadInput, "k must be nonnegative");
  if (static_cast<int>(removed.size()) != k) throw Error(ErrorCode::BadInput, "need exactly k labels to remove");
  TopLedger out = l;
  for (const std::string& label : removed) {
    auto it = std::find_if(out.inventory.begin(), out.inventory.end(),
                           [&](const IndexedPoint& p) { return p.label == label; });
    if (it == out.inventory.end()) throw Error(ErrorCode::BadInput, "no complex point labelled " + label);
    if (it->index != -1) {
      throw Error(ErrorCode::NotHyperbolic, label + " has index " + std::to_string(it->index));
    }
    out.inventory.erase(it);
  }
  out.chi_t -= k;
  out.chi_n += 2 * k;
  return out;
}

ScenarioReport reformulation_scenario(int k, int pairs) {
  if (k < 0 || pairs < 0) throw Error(ErrorCode::BadInput, "k and pairs must be nonnegative");
  ScenarioReport r;
  r.k = k;
  r.pairs = pairs;
  r.umbilic_index_doubled = 4 + k;
  r.complex_index = r.umbilic_index_doubled;  // I = 2i

  // Closed-up Lagrangian sphere: χT = χN = 2.
  r.closed.chi_t = 2;
  r.closed.chi_n = 2;
  r.closed.inventory.push_back({"p", r.complex_index});
  for (int e = 0; e < pairs; ++e) r.closed.inventory.push_back({"e" + std::to_string(e + 1), 1});
  for (int h = 0; h < pairs + k; ++h) r.closed.inventory.push_back({"h" + std::to_string(h + 1), -1});
  r.annulus_sum = r.closed.index_sum() - r.complex_index;

  // Pairwise cancellation keeps h_{pairs+1..pairs+k}.
  r.cancelled = r.closed;
  std::erase_if(r.cancelled.inventory, [&](const IndexedPoint& p) {
    if (p.label[0] == 'e') return true;
    return p.label[0] == 'h' && std::stoi(p.label.substr(1)) <= pairs;
  });

  std::vector<std::string> hyperbolic;
  for (const IndexedPoint& p : r.cancelled.inventory)
    if (p.label[0] == 'h') hyperbolic.push_back(p.label);
  r.blown_up = connect_sum_rp2(r.cancelled, k, hyperbolic);
  r.lai_total = lai_sum(r.blown_up).total;

  const bool umbilic_link = r.complex_index == r.umbilic_index_doubled && r.complex_index == 4 + k;
  const bool annulus = r.annulus_sum == -k;
  const bool closed_lai = r.closed.consistent() && r.closed.chi_t + r.closed.chi_n == 4;
  const bool cancelled_ok = r.cancelled.consistent() &&
                            static_cast<int>(hyperbolic.size()) == k;
  const bool final_ok = r.blown_up.consistent() && r.blown_up.inventory.size() == 1 &&
                        r.blown_up.inventory.front().index == 4 + k && r.lai_total == 4 + k &&
                        r.blown_up.chi_t == 2 - k && r.blown_up.chi_n == 2 + 2 * k;
  r.identities_hold = umbilic_link && annulus && closed_lai && cancelled_ok && final_ok;
  return r;
}

}  // namespace tslines
