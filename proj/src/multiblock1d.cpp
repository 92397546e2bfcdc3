#include "sbpp/multiblock1d.hpp"

namespace sbpp {

Mat build_embedding1d(Index N1, Index N2) {
  require(N1 >= 1 && N2 >= 1, ErrorCode::invalid_argument, "build_embedding1d: block sizes must be positive");
  const Index n = N1 + N2 + 1;
  Mat E = Mat::Zero(n + 1, n);
  for (Index i = 0; i <= N1; ++i) E(i, i) = 1.0;
  for (Index i = 0; i <= N2; ++i) E(N1 + 1 + i, N1 + i) = 1.0;
  return E;
}

Vec MultiBlockAssembly1D::grid() const {
  Vec x(N() + 1);
  const Vec xa = a.grid();
  const Vec xb = b.grid();
  x.head(a.N + 1) = xa;
  x.tail(b.N) = xb.tail(b.N).array() + a.length;
  return x;
}

MultiBlockAssembly1D assemble_multiblock1d(const SbpPair1D& a, const SbpPair1D& b) {
  require(a.H().is_diagonal() && b.H().is_diagonal(), ErrorCode::invalid_argument,
          "assemble_multiblock1d: parts must carry diagonal norms");
  const Index N1 = a.N, N2 = b.N;
  const Index n1 = N1 + 1, n2 = N2 + 1;

  Vec hplus(n1 + n2);
  hplus << a.H().diag(), b.H().diag();
  Mat Dplus = Mat::Zero(n1 + n2, n1 + n2);
  Dplus.topLeftCorner(n1, n1) = a.D.matrix();
  Dplus.bottomRightCorner(n2, n2) = b.D.matrix();

  const Mat E = build_embedding1d(N1, N2);
  const Vec hd = E.transpose() * hplus;  // E^T H+ E is diagonal for diagonal H+
  Space vplus(Norm::diagonal(hplus));
  Space v(Norm::diagonal(hd));

  const Mat D = hd.cwiseInverse().asDiagonal() * (E.transpose() * (hplus.asDiagonal() * (Dplus * E)));
  const double chi = a.H().diag()(N1) / (a.H().diag()(N1) + b.H().diag()(0));

  Embedding1D emb{LinearMap(E, v, vplus), chi, N1, N2};
  return MultiBlockAssembly1D{v, LinearMap(D, v, v), std::move(emb), a, b, Mat(hplus.asDiagonal()), Dplus};
}

RowVec multiblock_interface_row(const MultiBlockAssembly1D& m) { return m.D.matrix().row(m.embedding.N1); }

RowVec interface_row_formula(const SbpPair1D& a, const SbpPair1D& b) {
  const Index N1 = a.N, N2 = b.N;
  const double ha = a.H().diag()(N1), hb = b.H().diag()(0);
  const double chi = ha / (ha + hb);
  RowVec row = RowVec::Zero(N1 + N2 + 1);
  row.head(N1 + 1) += chi * a.D.matrix().row(N1);
  row.tail(N2 + 1) += (1.0 - chi) * b.D.matrix().row(0);
  return row;
}

}  // namespace sbpp
