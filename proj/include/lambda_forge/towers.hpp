#pragma once

#include <map>
#include <string>
#include <vector>

#include "lambda_forge/trunc_series.hpp"

namespace lf {

// Omega(f) = (1+U) df/dU; the trusted order drops by one
TruncSeries omega_apply(const TruncSeries& f);

// One lifting stage: solve Omega(g) = f coefficientwise via
// (m+1) b_{m+1} + m b_m = a_m.  b_0 never enters the higher coefficients,
// so a lift is reported with b_0 = 0 and the free constant noted.
struct OmegaLift {
  bool ok = false;
  TruncSeries lift;     // order N+1, b_0 = 0
  int obstruction = -1;  // index n of the first coefficient with no solution
  std::string note;
  OmegaLift() : lift(ScalarDomain::rationals(), 0) {}
};

// Over Q every series lifts; over Z the alternating sums must be divisible
// by n; over F_p (p prime) a lift exists iff f lies in the block-sum
// subgroup L, with the coefficients b_{kp} free (set to 0 here).
OmegaLift omega_lift(const TruncSeries& f);

// L_{F_p}: every complete block sum a_{kp} + ... + a_{kp+p-1} vanishes
bool fp_membership_L(const TruncSeries& f);
// the unique lift of f that lies in L again; complete blocks of the lift
// are balanced, the trailing incomplete block keeps its free coefficient 0
TruncSeries fp_canonical_lift(const TruncSeries& f);

// Integral lift chain g_D -> ... -> g_1 -> g_0 = f under Omega.  In
// sigma-coordinates a stage prepends one free constant, so a depth-D chain
// is a solution of linear congruences for (c_1, ..., c_D); the system is
// solved exactly on an affine lattice.
struct TowerLift {
  bool ok = false;
  unsigned obstructionDepth = 0;  // first depth with no integral solution
  std::vector<TruncSeries> chain;  // g_0 = f, ..., g_D; level j has order N+j
  std::string note;
};

TowerLift tower_lift_to_depth(const TruncSeries& f, unsigned depth);

// ---- sigma and the p-basis ----

// p_n = log(1+U)^n / n!, n = 0..top, each truncated at order N
std::vector<TruncSeries> p_basis(unsigned top, int N);

// sigma(a) = sum a_n p_n
TruncSeries sigma(const std::vector<Rat>& a, int N);
// p-basis coordinates a_0..a_N of f (triangular solve)
std::vector<Rat> sigma_inverse(const TruncSeries& f);

// Element of lim Q^Omega given by a finitely supported window function:
// level k is sigma(a_{-k}, a_{-k+1}, ...) = sum_m a_m p_{k+m}.
class StableElement {
 public:
  StableElement(std::map<long, Rat> window, int W, int N);

  int window_radius() const { return W_; }
  int truncation() const { return N_; }
  const std::map<long, Rat>& window() const { return window_; }
  Rat at(long m) const;

  TruncSeries level(long k) const;  // k >= 0
  bool operator==(const StableElement& o) const;
  bool operator!=(const StableElement& o) const { return !(*this == o); }
  std::string str() const;

 private:
  int W_;
  int N_;
  std::map<long, Rat> window_;  // zeros dropped, support in [-W, W]
};

StableElement pi_n(long n, int W, int N);
StableElement chi_interval(long n, int W, int N);  // sum of pi_m, |m| <= n
StableElement psi_stable(long k, int W, int N);    // window m -> k^m; k != 0
// phi_{n,k}: window m -> 1/(k^m - k^n) away from n, 0 at n
StableElement phi_nk(long n, long k, int W, int N);
StableElement stable_identity(int W, int N);  // window of all ones

StableElement stable_add(const StableElement& a, const StableElement& b);
StableElement stable_sub(const StableElement& a, const StableElement& b);
StableElement stable_scalar(const Rat& c, const StableElement& a);
// the ring structure of lim Q^Omega: pointwise product of window functions
StableElement stable_compose(const StableElement& a, const StableElement& b);

// ---- tower descriptors and classification ----

struct GroupDescriptor {
  enum class Kind { FreeAbelian, Finite, Rationals, FpVector, FinitelyGenerated };
  Kind kind = Kind::FreeAbelian;
  unsigned rank = 0;
  std::vector<Int> invariantFactors;  // each >= 2, divisibility-chained
  Int p = 0;                          // FpVector prime
  unsigned dim = 1;                   // FpVector dimension

  static GroupDescriptor free_abelian(unsigned r);
  static GroupDescriptor finite(std::vector<Int> factors);
  static GroupDescriptor rationals();
  static GroupDescriptor fp_vector(const Int& p, unsigned dim = 1);
  static GroupDescriptor finitely_generated(unsigned r, std::vector<Int> torsion);

  bool is_trivial() const;
  bool is_finite() const;
  std::string str() const;
};

struct TowerDescriptor {
  enum class Kind { Omega, Factorial, Shift, Product };
  Kind kind = Kind::Omega;
  GroupDescriptor A;
  unsigned shift = 0;
  std::vector<TowerDescriptor> inner;  // Shift: one entry; Product: the factors
  int truncation = 12;
  unsigned depth = 8;

  static TowerDescriptor omega(GroupDescriptor A, int N = 12);
  static TowerDescriptor factorial(GroupDescriptor A, unsigned D = 8);
  static TowerDescriptor shifted(unsigned j, TowerDescriptor inner);
  static TowerDescriptor product(std::vector<TowerDescriptor> factors);
  std::string str() const;
};

enum class MittagLeffler { Yes, No, Unknown };

struct LimClass {
  enum class Kind { Zero, IsomorphicTo, SubgroupOfSeries, SequenceSpace, Unknown };
  Kind kind = Kind::Unknown;
  GroupDescriptor iso;  // for IsomorphicTo
  std::string detail;
};

struct R1Class {
  enum class Kind { Zero, HatZModZPower, ExtQSymbolic, Unknown };
  Kind kind = Kind::Unknown;
  unsigned power = 1;    // (HatZ/Z)^power
  GroupDescriptor arg;   // ExtQSymbolic: the A of Ext(Q, A)
  std::string detail;
};

struct LimReport {
  MittagLeffler ml = MittagLeffler::Unknown;
  LimClass lim;
  R1Class r1lim;
  std::vector<std::string> evidence;
  std::vector<LimReport> components;  // for Product towers
};

LimReport analyze_tower(const TowerDescriptor& T);

std::string ml_str(MittagLeffler m);
std::string lim_class_str(const LimClass& c);
std::string r1_class_str(const R1Class& c);

// lim A! = Hom(Q, A) and R^1 lim A! = Ext(Q, A), in closed form
LimClass hom_q(const GroupDescriptor& A);
R1Class ext_q(const GroupDescriptor& A);

// Milnor sequence 0 -> R^1 lim K_{i+1}^Omega -> [BGL, BGL] -> lim K_i^Omega -> 0
struct MilnorReport {
  int i = 0;
  LimReport phantomPart;  // from the K_{i+1} tower
  LimReport limPart;      // from the K_i tower
  bool phantomFree = false;
  std::string summary;
};

// baseKGroups must carry descriptors for degrees i and i+1
MilnorReport milnor_report(int i, const std::map<int, GroupDescriptor>& baseKGroups,
                           int truncation = 12);

}  // namespace lf
