#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "mgt/cubic.hpp"
#include "mgt/mat3.hpp"
#include "mgt/params.hpp"
#include "mgt/spectrum.hpp"

namespace mgt {

/// Functional-space selector.  The four natural state spaces come in two
/// pairs related by an isometry, so H2 resolves to H1 and H4 to H3; the
/// resolved space determines the modal weight matrix.
enum class Space { H1, H2, H3, H4 };

struct ResolvedSpace {
  Space requested;
  Space resolved;      // H1 or H3
  bool via_isometry;   // true when requested was H2 or H4
};

ResolvedSpace resolve_space(Space s);
const char* to_string(Space s);
Space space_from_string(const std::string& name);

/// Natural per-mode weight: diag(mu, mu, 1) on H1, diag(mu^2, mu, 1) on H3.
struct NaturalWeight {
  ResolvedSpace space;
  double mu;
  Vec3 diag;

  Mat3 matrix() const { return Mat3::diagonal(diag[0], diag[1], diag[2]); }
};

/// Columns psi_j = (1, lambda_j, lambda_j^2)^T / c_j, each of unit natural
/// norm.  Requires a non-defective triple.
struct ModalFrame {
  ResolvedSpace space;
  double mu;
  std::array<double, 3> normalizers;  // c_j > 0
  CMat3 columns;                      // C = [psi_1 psi_2 psi_3]
};

/// The inner-product matrix G = (conj(C^-1))^T C^-1 that makes the frame
/// columns orthonormal and the companion block normal.  Provably real
/// symmetric positive definite; imag_residue records the discarded imaginary
/// part of the construction.
struct ModalGram {
  ResolvedSpace space;
  double mu;
  Mat3 gram;
  double imag_residue;
};

/// Extreme generalized eigenvalues of the pencil (G, O): for all x,
/// m * |x|_O <= |x|_G <= M * |x|_O.
struct EquivalenceBounds {
  double m;
  double M;
};

/// Per-mode bounds plus the uniform band over the modes from index n0 on.
struct GlobalEquivalence {
  std::vector<EquivalenceBounds> per_mode;
  int n0;          // 1-based start of the band
  double m_star;   // min m over modes >= n0
  double M_star;   // max M over modes >= n0
};

/// Jordan-scaled inner product for a defective block: with P the generalized
/// eigenvector basis and S = diag(eps^0, eps^1, ...) along each chain,
/// G_eps = ((P S)^-1)^T (P S)^-1 yields |e^(Mt)|_{G_eps} <= e^((sigma+eps) t).
struct DefectiveMetric {
  double mu;
  double epsilon;
  Mat3 gram;
  double sigma_block;   // largest eigenvalue of the block
  Mat3 basis;           // P (columns: eigen/chain vectors)
};

/// Block-diagonal metric over a mode set: the normality metric G on
/// non-defective modes and the eps-adjusted metric on defective ones.
struct GlobalMetric {
  ModelParams params;
  ResolvedSpace space;
  std::vector<double> mus;
  std::vector<std::variant<ModalGram, DefectiveMetric>> blocks;
  bool adjusted;       // true when any block is defective (metric G')
  double epsilon;      // eps actually used for defective blocks (0 if none)

  const Mat3& block_matrix(std::size_t i) const;
};

NaturalWeight natural_weight(Space space, double mu);
std::array<double, 3> normalization_constants(Space space, double mu, const RootTriple& triple);
ModalFrame modal_frame(Space space, double mu, const RootTriple& triple);
ModalGram modal_gram(Space space, double mu, const RootTriple& triple);

/// Companion block of one mode: [[0,1,0],[0,0,1],[-mu/a, -b mu/a, -1/a]].
Mat3 companion_matrix(const ModelParams& params, double mu);

/// |M M* - M* M|_F / |M|_F^2 with M* = G^-1 M^T G the G-adjoint of the
/// companion block.  At most ~1e-8 for Grams from modal_gram.
double normality_residual(const ModelParams& params, double mu, const Mat3& gram);

EquivalenceBounds equivalence_bounds(const Mat3& gram, const NaturalWeight& weight);
GlobalEquivalence global_equivalence_bounds(const ModelParams& params, Space space,
                                            const ModeSet& modes, int n0);

/// Leading-order predictions for the Gram entries as mu -> infinity.
Mat3 gram_asymptotics(Space space, const ModelParams& params, double mu);

/// Modal matrix of the dissipation energy product:
/// |v + alpha w|^2 + mu |u + alpha v|^2 + alpha (beta - alpha) mu |v|^2.
Mat3 energy_weight(const ModelParams& params, double mu);

DefectiveMetric defective_metric(const ModelParams& params, double mu, double epsilon);

GlobalMetric global_metric(const ModelParams& params, const ModeSet& modes, Space space,
                           std::optional<double> epsilon = std::nullopt);

}  // namespace mgt
