#pragma once

#include "sbpp/sbp1d.hpp"

namespace sbpp {

struct Embedding1D {
  LinearMap E;  // V (N+1) -> V+ (N+2)
  double chi;
  Index N1, N2;
};

// 0/1 matrix (N1+N2+2) x (N1+N2+1) duplicating index N1.
Mat build_embedding1d(Index N1, Index N2);

struct MultiBlockAssembly1D {
  Space space;  // carries H
  LinearMap D;
  Embedding1D embedding;
  SbpPair1D a, b;
  Mat Hplus, Dplus;

  const Norm& H() const { return space.norm(); }
  Index N() const { return embedding.N1 + embedding.N2; }
  Vec grid() const;
  int boundary_order() const { return std::min(a.boundary_order, b.boundary_order); }
};

// Block a occupies [0, a.length], block b is shifted to [a.length, a.length + b.length].
MultiBlockAssembly1D assemble_multiblock1d(const SbpPair1D& a, const SbpPair1D& b);

RowVec multiblock_interface_row(const MultiBlockAssembly1D& m);

// Direct weighted-mean formula for the interface row, from the parts alone.
RowVec interface_row_formula(const SbpPair1D& a, const SbpPair1D& b);

}  // namespace sbpp
