#ifndef NEWTONSCOPE_TROPICAL_HPP
#define NEWTONSCOPE_TROPICAL_HPP

#include "newtonscope/oracle.hpp"

namespace newtonscope {

struct ProjectionReport {
  std::vector<int> kept;
  RationalVector projectedDirection;
  OracleAnswer answer;
  bool skipped = false;
  std::string skipReason;
};

/// Outcome of the projection-based tropical membership test. The verdict is
/// one-sided: false is conclusive, true may be a false positive when the
/// coordinate projections are not generic.
struct MembershipReport {
  RationalVector originalOmega;
  RationalVector omega;  // direction actually queried (after any map)
  bool transformed = false;
  std::vector<std::vector<long long>> map;  // empty when untransformed
  std::vector<ProjectionReport> perProjection;
  enum class Verdict { True, False, Inconclusive } verdict = Verdict::Inconclusive;
  std::string inconclusiveReason;
  uint64_t seed = 0;

  bool decisive() const { return verdict != Verdict::Inconclusive; }
};

struct MonomialMapChoice {
  enum class Kind { None, Random, Given };
  Kind kind = Kind::None;
  std::vector<std::vector<long long>> matrix;  // for Given

  static MonomialMapChoice none() { return {}; }
  static MonomialMapChoice random();
  static MonomialMapChoice given(std::vector<std::vector<long long>> A);
};

/// Unimodular matrix with nonnegative entries built as a product of 2n
/// random elementary triangular matrices (off-diagonal entries in {0,1,2}).
std::vector<std::vector<long long>> randomUnimodularMap(int n, Rng& rng);

/// Exact A^{-1} omega for unimodular integer A.
RationalVector transformDirection(const std::vector<std::vector<long long>>& A,
                                  const RationalVector& omega);

/// Algorithm: test omega against trop(V(I)) by querying the HS oracle on
/// every coordinate projection of V(I) with hypersurface image.
MembershipReport tropicalMembership(const PolySystem& I, const RationalVector& omega,
                                    const OracleSettings& settings, Rng& rng,
                                    const MonomialMapChoice& mapChoice = {});

std::string membershipToJson(const MembershipReport& report);

}  // namespace newtonscope

#endif
