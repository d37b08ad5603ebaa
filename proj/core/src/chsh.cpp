#include "diqsdc/chsh.hpp"

#include "diqsdc/errors.hpp"
#include "diqsdc/parallel.hpp"

#include <array>
#include <cmath>
#include <string>

namespace diqsdc {

namespace {

// Joint +-1 outcome distribution for one (Alice setting, Bob setting) cell.
// Index: (a == +1 ? 0 : 1) * 2 + (b == +1 ? 0 : 1).
std::array<double, 4> joint_distribution(const SectoredTwoPhotonState& s, double theta_a,
                                         double theta_b) {
  std::array<double, 4> probs{};
  const Matrix2 pa_plus = outcome_projector(Party::Alice, theta_a, +1);
  const Matrix2 pb_plus = outcome_projector(Party::Bob, theta_b, +1);
  const double pa_msg = s.w_message_only > 0
                            ? (s.rho_message * pa_plus).trace().real()
                            : 0.5;
  const double pb_chk = s.w_check_only > 0 ? (s.rho_check * pb_plus).trace().real() : 0.5;
  for (int ai = 0; ai < 2; ++ai) {
    const Matrix2 pa = ai == 0 ? pa_plus : Matrix2(Matrix2::Identity() - pa_plus);
    const double a_single = ai == 0 ? pa_msg : 1.0 - pa_msg;
    for (int bi = 0; bi < 2; ++bi) {
      const Matrix2 pb = bi == 0 ? pb_plus : Matrix2(Matrix2::Identity() - pb_plus);
      const double b_single = bi == 0 ? pb_chk : 1.0 - pb_chk;
      double p = s.w_both * (s.rho_both * kron(pb, pa)).trace().real();
      p += s.w_message_only * a_single * 0.5;   // check outcome is a coin
      p += s.w_check_only * 0.5 * b_single;     // message outcome is a coin
      p += s.w_vacuum * 0.25;
      probs[ai * 2 + bi] = std::max(0.0, p);
    }
  }
  return probs;
}

int sample_from(const std::array<double, 4>& probs, Rng& rng) {
  double u = rng.next_double();
  for (int i = 0; i < 3; ++i) {
    if (u < probs[i]) return i;
    u -= probs[i];
  }
  return 3;
}

struct CellCounts {
  // counts[alice setting 0..2][bob setting 0..1][joint outcome 0..3]
  std::array<std::array<std::array<std::uint64_t, 4>, 2>, 3> n{};

  void merge(const CellCounts& o) {
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 2; ++b)
        for (int k = 0; k < 4; ++k) n[a][b][k] += o.n[a][b][k];
  }
};

}  // namespace

std::pair<int, int> sample_pair_outcome(const SectoredTwoPhotonState& s, double theta_a,
                                        double theta_b, Rng& rng) {
  const auto probs = joint_distribution(s, theta_a, theta_b);
  const int k = sample_from(probs, rng);
  return {k / 2 == 0 ? 1 : -1, k % 2 == 0 ? 1 : -1};
}

double chsh_exact(const SectoredTwoPhotonState& s) {
  const double a1 = kAliceSettings[1], a2 = kAliceSettings[2];
  const double b1 = kBobSettings[0], b2 = kBobSettings[1];
  return correlator(s, a1, b1) + correlator(s, a1, b2) + correlator(s, a2, b1) -
         correlator(s, a2, b2);
}

SecurityCheckResult estimate_security(const StateMixture& source, std::size_t n_check,
                                      std::uint64_t seed, const SecurityCheckOptions& opts) {
  if (source.empty()) throw DomainError("empty state mixture");
  if (n_check < opts.min_pairs) {
    throw InsufficientSamplesError("check subset of " + std::to_string(n_check) +
                                   " pairs is below the configured minimum of " +
                                   std::to_string(opts.min_pairs));
  }

  // Per-component outcome tables for the six setting cells.
  struct ComponentTables {
    double weight;
    std::array<std::array<std::array<double, 4>, 2>, 3> probs;
  };
  std::vector<ComponentTables> tables;
  tables.reserve(source.size());
  for (const auto& [w, state] : source) {
    ComponentTables t;
    t.weight = w;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 2; ++b)
        t.probs[a][b] = joint_distribution(state, kAliceSettings[a], kBobSettings[b]);
    tables.push_back(t);
  }

  const CellCounts counts = parallel_index_reduce(
      n_check, opts.threads, CellCounts{},
      [&](CellCounts& acc, std::size_t i) {
        Rng rng = Rng::derive(seed, /*purpose=*/0x5ec5, i);
        std::size_t comp = 0;
        if (tables.size() > 1) {
          double u = rng.next_double();
          for (; comp + 1 < tables.size(); ++comp) {
            if (u < tables[comp].weight) break;
            u -= tables[comp].weight;
          }
        }
        const int a = static_cast<int>(rng.next_below(3));
        const int b = static_cast<int>(rng.next_below(2));
        const int k = sample_from(tables[comp].probs[a][b], rng);
        ++acc.n[a][b][k];
      },
      [](CellCounts& acc, const CellCounts& part) { acc.merge(part); });

  SecurityCheckResult res;
  res.n_pairs_used = n_check;

  double s = 0.0, s_var = 0.0;
  for (int a = 1; a <= 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const auto& cell = counts.n[a][b];
      const std::uint64_t n = cell[0] + cell[1] + cell[2] + cell[3];
      if (n < opts.min_cell) {
        throw InsufficientSamplesError("setting cell received fewer than " +
                                       std::to_string(opts.min_cell) + " pairs");
      }
      const double eq = static_cast<double>(cell[0] + cell[3]);
      const double c = (2.0 * eq - static_cast<double>(n)) / static_cast<double>(n);
      const double sign = (a == 2 && b == 1) ? -1.0 : 1.0;
      s += sign * c;
      s_var += (1.0 - c * c) / static_cast<double>(n);
    }
  }
  {
    const auto& cell = counts.n[0][0];  // (A0, B1)
    const std::uint64_t n = cell[0] + cell[1] + cell[2] + cell[3];
    if (n < opts.min_cell) {
      throw InsufficientSamplesError("QBER cell received fewer than " +
                                     std::to_string(opts.min_cell) + " pairs");
    }
    const double q = static_cast<double>(cell[1] + cell[2]) / static_cast<double>(n);
    res.q_estimate = q;
    res.q_stderr = std::sqrt(std::max(0.0, q * (1.0 - q)) / static_cast<double>(n));
  }

  res.s_estimate = s;
  res.s_stderr = std::sqrt(s_var);
  res.verdict = s <= 2.0 ? SecurityCheckResult::Verdict::Abort
                         : SecurityCheckResult::Verdict::Secure;
  res.marginal_warning = s - 2.0 < 3.0 * res.s_stderr;
  return res;
}

}  // namespace diqsdc
