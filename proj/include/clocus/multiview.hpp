#ifndef CLOCUS_MULTIVIEW_HPP
#define CLOCUS_MULTIVIEW_HPP

#include <numeric>
#include <string>
#include <vector>

#include "clocus/linalg.hpp"

namespace clocus {

// Linear projection P^k --> P^h with h < k, given by a full-rank
// (h+1) x (k+1) matrix acting on column coordinate vectors.
template <class S>
class Projection {
 public:
  Projection() : k_(0), h_(0) {}

  int sourceDim() const { return k_; }  // k
  int targetDim() const { return h_; }  // h
  const MatrixX<S>& matrix() const { return mat_; }

  VectorX<S> apply(const VectorX<S>& x) const {
    if (x.size() != k_ + 1)
      throw DimensionMismatchError("projection applied to wrong-length vector");
    return mat_ * x;
  }

  template <class T>
  friend Projection<T> makeProjection(const MatrixX<T>& m);

 private:
  int k_, h_;
  MatrixX<S> mat_;
};

template <class S>
Projection<S> makeProjection(const MatrixX<S>& m) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  if (rows < 1 || cols < 2 || rows >= cols)
    throw InvalidCameraError("camera must be (h+1) x (k+1) with h < k");
  if (rank<S>(m) != rows)
    throw InvalidCameraError("camera matrix must have full row rank");
  Projection<S> p;
  p.k_ = cols - 1;
  p.h_ = rows - 1;
  p.mat_ = m;
  return p;
}

// The center of a projection: the linear subspace of P^k where the map is
// undefined, i.e. the right kernel of the matrix.  Projective dimension is
// k - h - 1; the basis matrix is (k+1) x (k-h).
template <class S>
struct Center {
  MatrixX<S> basis;
  int projectiveDim() const { return static_cast<int>(basis.cols()) - 1; }
};

template <class S>
Center<S> centerOf(const Projection<S>& p) {
  Center<S> c{kernelBasis<S>(p.matrix())};
  if (c.basis.cols() != p.sourceDim() - p.targetDim())
    throw InvalidCameraError("kernel dimension inconsistent with camera rank");
  return c;
}

struct ProfileCheck {
  bool valid = false;
  std::string diagnostic;
};

// A profile assigns to each view an integer alpha_i with
// 0 <= alpha_i <= h_i and sum alpha_i = k + 1.
inline ProfileCheck validateProfile(int k, const std::vector<int>& hs,
                                    const std::vector<int>& alphas) {
  ProfileCheck out;
  if (hs.size() != alphas.size()) {
    out.diagnostic = "profile length differs from number of views";
    return out;
  }
  int sum = 0;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (hs[i] < 1 || hs[i] >= k) {
      out.diagnostic = "view " + std::to_string(i) + " has h out of range";
      return out;
    }
    if (alphas[i] < 0 || alphas[i] > hs[i]) {
      out.diagnostic = "alpha_" + std::to_string(i) + " outside [0, h_i]";
      return out;
    }
    sum += alphas[i];
  }
  if (sum != k + 1) {
    out.diagnostic = "profile sums to " + std::to_string(sum) +
                     ", expected k+1 = " + std::to_string(k + 1);
    return out;
  }
  out.valid = true;
  out.diagnostic = "ok";
  return out;
}

// A general linear subspace of a target space P^h, spanned by the columns
// of a full-column-rank (h+1) x (s_i + 1) matrix, where s_i = h_i - alpha_i
// is its projective dimension.
template <class S>
struct SubspaceFrame {
  MatrixX<S> columns;

  int ambientDim() const { return static_cast<int>(columns.rows()) - 1; }
  int projectiveDim() const { return static_cast<int>(columns.cols()) - 1; }
};

template <class S>
SubspaceFrame<S> makeFrame(const MatrixX<S>& columns) {
  if (columns.cols() < 1 || columns.cols() > columns.rows())
    throw ProfileMismatchError("frame must have between 1 and h+1 columns");
  if (rank<S>(columns) != columns.cols())
    throw ProfileMismatchError("frame columns must be independent");
  return SubspaceFrame<S>{columns};
}

// Square matrix whose determinant is the Grassmann tensor component for the
// given frames.  Row block i holds [P_i | 0 .. frame_i .. 0]; the first
// k+1 columns are the stacked cameras.  Order bookkeeping is recomputed two
// ways (sum over views of h_i + 1 alongside k + 1 plus frame widths) and
// must agree, otherwise the frames do not define a profile.
template <class S>
MatrixX<S> assembleGrassmannMatrix(const std::vector<Projection<S>>& projs,
                                   const std::vector<SubspaceFrame<S>>& frames) {
  const int n = static_cast<int>(projs.size());
  if (n < 2) throw ProfileMismatchError("need at least two views");
  if (frames.size() != projs.size())
    throw ProfileMismatchError("one frame required per view");
  const int k = projs[0].sourceDim();
  int sumH = 0, sumW = 0;
  for (int i = 0; i < n; ++i) {
    if (projs[i].sourceDim() != k)
      throw DimensionMismatchError("views share one source space");
    if (frames[i].ambientDim() != projs[i].targetDim())
      throw ProfileMismatchError("frame lives in the wrong target space");
    sumH += projs[i].targetDim() + 1;
    sumW += frames[i].projectiveDim() + 1;
  }
  const int orderByRows = sumH;              // n + sum h_i
  const int orderByCols = (k + 1) + sumW;    // k + 1 + sum (h_i - alpha_i + 1)
  if (orderByRows != orderByCols)
    throw ProfileMismatchError(
        "frame dimensions do not realize a profile: row count " +
        std::to_string(orderByRows) + " vs column count " +
        std::to_string(orderByCols));
  // Implied alphas must be genuine profile entries (alpha_i >= 0 is the
  // frame-width bound already checked; alpha_i <= h_i means width >= 1).
  MatrixX<S> m(orderByRows, orderByCols);
  for (int i = 0; i < orderByRows; ++i)
    for (int j = 0; j < orderByCols; ++j) m(i, j) = S(0);
  int rowAt = 0, colAt = k + 1;
  for (int i = 0; i < n; ++i) {
    const int bh = projs[i].targetDim() + 1;
    const int bw = frames[i].projectiveDim() + 1;
    m.block(rowAt, 0, bh, k + 1) = projs[i].matrix();
    m.block(rowAt, colAt, bh, bw) = frames[i].columns;
    rowAt += bh;
    colAt += bw;
  }
  return m;
}

template <class S>
S grassmannTensorValue(const std::vector<Projection<S>>& projs,
                       const std::vector<SubspaceFrame<S>>& frames) {
  return determinantExact<S>(assembleGrassmannMatrix(projs, frames));
}

// Frames correspond when some point of P^k projects into every frame, which
// is exactly the vanishing of the tensor component.
template <class S>
bool areCorresponding(const std::vector<Projection<S>>& projs,
                      const std::vector<SubspaceFrame<S>>& frames) {
  return scalarIsZero(grassmannTensorValue(projs, frames));
}

template <class S>
Projection<S> sampleProjection(const Field<S>& F, SplitMix64& rng, int k,
                               int h) {
  return makeProjection<S>(randomFullRankMatrix(F, rng, h + 1, k + 1));
}

// Frames of the profile widths passing through the images of a common
// witness point X, padded with random directions.
template <class S>
std::vector<SubspaceFrame<S>> sampleFramesThroughPoint(
    const std::vector<Projection<S>>& projs, const std::vector<int>& alphas,
    const VectorX<S>& witness, const Field<S>& F, SplitMix64& rng) {
  std::vector<SubspaceFrame<S>> frames;
  frames.reserve(projs.size());
  for (std::size_t i = 0; i < projs.size(); ++i) {
    const int h = projs[i].targetDim();
    const int width = h - alphas[i] + 1;
    VectorX<S> img = projs[i].apply(witness);
    for (int attempt = 0;; ++attempt) {
      if (attempt >= kResampleCap)
        throw DegenerateSetupError("failed to complete frame through image point");
      MatrixX<S> cols(h + 1, width);
      cols.col(0) = img;
      for (int j = 1; j < width; ++j)
        for (int r = 0; r <= h; ++r) cols(r, j) = F.sample(rng);
      if (rank<S>(cols) == width) {
        frames.push_back(SubspaceFrame<S>{cols});
        break;
      }
    }
  }
  return frames;
}

template <class S>
std::vector<SubspaceFrame<S>> sampleRandomFrames(
    const std::vector<Projection<S>>& projs, const std::vector<int>& alphas,
    const Field<S>& F, SplitMix64& rng) {
  std::vector<SubspaceFrame<S>> frames;
  frames.reserve(projs.size());
  for (std::size_t i = 0; i < projs.size(); ++i) {
    const int h = projs[i].targetDim();
    const int width = h - alphas[i] + 1;
    frames.push_back(
        SubspaceFrame<S>{randomFullRankMatrix(F, rng, h + 1, width)});
  }
  return frames;
}

}  // namespace clocus

#endif  // CLOCUS_MULTIVIEW_HPP
