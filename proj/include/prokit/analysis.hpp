// Minimal-witness profiles for the proregularity conditions and the checks
// built on them: bound transfer, injective-dual criteria, local-global
// comparison and the Cartier colon condition.
//
// Profile entries for distinct (i, n) are independent; the default entry
// points evaluate them with OpenMP and merge by (i, n). The serial namespace
// holds the single-threaded reference used to test the parallel kernels.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prokit/koszul.hpp"

namespace prokit {

class InsufficientBound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotCovering : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ProfileKind { lipman, greenlees_may, weak, cartier };
std::string to_string(ProfileKind k);
std::optional<ProfileKind> profile_kind_from_string(const std::string& s);

struct Certificate {
  std::string kind;  // "witness-inclusion" or "violating-element"
  unsigned i = 0, n = 0, m = 0;
  Vec element;
  bool operator==(const Certificate&) const = default;
};

struct Profile {
  ProfileKind kind = ProfileKind::lipman;
  unsigned rows = 0;  // i = 1..rows
  unsigned n_max = 0;
  unsigned m_max = 0;
  std::vector<Witness> entries;  // row-major: (i-1) * n_max + (n-1)
  std::vector<Certificate> certificates;

  const Witness& at(unsigned i, unsigned n) const { return entries.at(std::size_t(i - 1) * n_max + (n - 1)); }
  bool conclusive() const;
  std::size_t inconclusive_count() const;
  bool operator==(const Profile&) const = default;
};

enum class Status { pass, counterexample, inconclusive };

struct CheckOutcome {
  std::string name;
  std::vector<std::pair<std::string, bool>> checks;  // asserted
  std::vector<std::pair<std::string, bool>> facts;   // reported only (hypotheses, verdicts)
  std::vector<Certificate> certificates;
  std::vector<std::pair<std::string, Profile>> profiles;
  std::vector<std::string> notes;
  bool inconclusive = false;
  double seconds = 0;

  void check(const std::string& key, bool value) { checks.emplace_back(key, value); }
  void fact(const std::string& key, bool value) { facts.emplace_back(key, value); }
  bool passed() const;
  Status status() const;
  std::optional<bool> fact_value(const std::string& key) const;
  std::optional<bool> check_value(const std::string& key) const;
  bool operator==(const CheckOutcome&) const = default;
};

/// n_max + ceil(log2 |M|) * (k + 1)
unsigned default_m_max(const FgModule& m, std::size_t k, unsigned n_max);

struct TorsionIndex {
  unsigned c = 0;
  std::vector<Int> chain;  // |0 :_M x^j| for j = 1..c, strictly increasing
};

TorsionIndex bounded_torsion_index(const FgModule& m, const Vec& x);

// Single inclusion tests at position i (1-based), level n, exponent m.
/// (x_1^m..x_{i-1}^m)M : x_i^m  inside  (x_1^n..x_{i-1}^n)M : x_i^{m-n}
bool lipman_holds(const FgModule& m, const std::vector<Vec>& xs, unsigned i, unsigned n, unsigned level);
/// Multiplication by x_i^{m-n} from the level-m colon quotient to the level-n one is zero.
bool lipman_multiplication_zero(const FgModule& m, const std::vector<Vec>& xs, unsigned i, unsigned n,
                                unsigned level);
/// (x_1..x_{i-1})^m M : x_i^m  inside  (x_1..x_{i-1})^n M : x_i^{m-n}
bool gm_holds(const FgModule& m, const std::vector<Vec>& xs, unsigned i, unsigned n, unsigned level);
/// An element of the left colon outside the right one.
std::optional<Vec> lipman_violation(const FgModule& m, const std::vector<Vec>& xs, unsigned i, unsigned n,
                                    unsigned level);
std::optional<Vec> gm_violation(const FgModule& m, const std::vector<Vec>& xs, unsigned i, unsigned n,
                                unsigned level);

/// jobs <= 0 uses the OpenMP default.
Profile lipman_profile(const FgModule& m, const std::vector<Vec>& xs, unsigned n_max, unsigned m_max, int jobs = 0);
Profile gm_profile(const FgModule& m, const std::vector<Vec>& xs, unsigned n_max, unsigned m_max, int jobs = 0);
Profile weak_profile(const FgModule& m, const std::vector<Vec>& xs, unsigned n_max, unsigned m_max, unsigned i_max,
                     int jobs = 0);

namespace serial {
Profile lipman_profile(const FgModule& m, const std::vector<Vec>& xs, unsigned n_max, unsigned m_max);
Profile gm_profile(const FgModule& m, const std::vector<Vec>& xs, unsigned n_max, unsigned m_max);
Profile weak_profile(const FgModule& m, const std::vector<Vec>& xs, unsigned n_max, unsigned m_max, unsigned i_max);
}  // namespace serial

/// gm(i,n) <= i * lip(i,n) and lip(i,n) <= gm(i, i*n) where available.
/// Throws InsufficientBound if a needed entry is inconclusive.
CheckOutcome verify_bound_transfer(const Profile& lip, const Profile& gm);

CheckOutcome power_stability_check(const FgModule& m, const std::vector<Vec>& xs, const std::vector<unsigned>& exps,
                                   unsigned n_max = 3);

enum class CriterionMode { proregular, weak };
CheckOutcome injective_criterion(const FgModule& m, const std::vector<Vec>& xs, CriterionMode mode,
                                 unsigned n_max = 2);

CheckOutcome regular_then_bounded(const FgModule& m, const std::vector<Vec>& xs, const Vec& y, unsigned n_max = 3);

/// Empty covering means the maximal mode (primitive idempotents).
CheckOutcome local_global_check(const FgModule& m, const std::vector<Vec>& xs, const std::vector<Vec>& covering,
                                unsigned n_max = 3, unsigned i_max = 0);

CheckOutcome cartier_check(const Ideal& i, const Vec& x, unsigned n_max, unsigned m_max);

CheckOutcome is_effective_cartier(const Ideal& i, const std::vector<Vec>& covering);

/// Elements of a finite abelian group in odometer order.
std::vector<Vec> all_elements(const FinAbGroup& g);

}  // namespace prokit
