#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "curvebound/bounds.hpp"
#include "curvebound/intpoly.hpp"

namespace curvebound {

// Subgroups of S3 up to conjugacy.
enum class Group { S3, C3, C2, C1 };
std::string to_string(Group g);

// Contribution of the places over P to the degree of a different.
enum class Contribution { Zero, TwiceDegree, MDegree };
std::string to_string(Contribution c);

// One decomposition/inertia combination for a place P of the base in an S3
// Galois closure M of a non-Galois cubic extension, with the resulting
// splitting in the cubic field and the different contributions in the cubic
// field and in the quadratic resolvent L.
struct SplittingRow {
  Group decomposition;
  Group inertia;
  std::vector<std::pair<int, int>> places_over_P;  // (e, f) in the cubic field
  Contribution contribution_C;
  Contribution contribution_L;
  int m_P_lower_bound = 0;  // nonzero only for inertia C2

  bool ramified() const { return inertia != Group::C1; }
  // Behaviour of P in L, the fixed field of C3.
  enum class LBehaviour { Split, Inert, Ramified };
  LBehaviour in_resolvent() const;
};

const std::vector<SplittingRow>& s3_splitting_table();

struct CertificateStep {
  std::string name;
  std::string claim;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<std::pair<std::string, std::string>> values;
  bool passed = false;
  std::string citation;  // non-empty for premises taken from the literature
};

struct Certificate {
  std::string statement;
  long q = 0;
  std::vector<CertificateStep> steps;

  const CertificateStep& step(const std::string& name) const;
  std::string value(const std::string& step_name, const std::string& key) const;

  std::string to_json() const;
  std::string to_markdown() const;
};

class StepFailed : public std::runtime_error {
 public:
  StepFailed(CertificateStep step, Certificate partial)
      : std::runtime_error("certificate step '" + step.name + "' failed: " + step.claim),
        step_(std::move(step)),
        partial_(std::move(partial)) {}
  const CertificateStep& step() const { return step_; }
  const Certificate& partial() const { return partial_; }

 private:
  CertificateStep step_;
  Certificate partial_;
};

struct ReplayOptions {
  unsigned threads = 1;
  // Fault injection: replaces the computed number of degree-7 places of C.
  std::optional<mpz_class> p7_override;
  // Size of the published candidate list checked by the final filter.
  std::optional<std::size_t> expected_filter_count = 44;
};

struct ResolventConstraints {
  int genus_F = 0;
  long a1 = 0;
  long a2 = 0;
  long a3 = 0;
};

// Shows that a Galois triple cover C -> E is impossible.  The returned step
// has passed = true when the contradiction is established.
CertificateStep galois_contradiction(const IntPoly& hC, const IntPoly& hE, long q, const ReplayOptions& options = {});

// Derives the genus and low-degree place counts of the resolvent curve F,
// appending the intermediate steps.  Throws StepFailed or MissingBound.
ResolventConstraints resolvent_constraints(const IntPoly& hC, const IntPoly& hE, long q, const BoundsTable& bounds,
                                           std::vector<CertificateStep>& steps);

// Enumerates candidates for F and checks that none is divisible by hE.
CertificateStep resolvent_filter(const ResolventConstraints& constraints, const IntPoly& hE, long q,
                                 const ReplayOptions& options = {});

// End-to-end replay of the nonexistence argument for a genus-8 curve over F_q
// attaining the tabulated bound.  Throws StepFailed (with the partial
// certificate) or MissingBound.
Certificate replay_theorem2(long q, const BoundsTable& bounds, const ReplayOptions& options = {});

}  // namespace curvebound
