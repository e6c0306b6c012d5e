#pragma once

#include <string>

#include "sgs/basis.hpp"
#include "sgs/grid.hpp"

namespace sgs {

/// Half-open in spirit but stored inclusive: indices lo..hi, lo >= 1.
struct IndexRange {
    long lo = 1;
    long hi = 0;
    long count() const { return hi - lo + 1; }
};

/// Finite section of the cross-Gramian between a sampling system (rows)
/// and a reconstruction system (columns): entries(i, j) = <e^rec_{col_lo+j},
/// e^smp_{row_lo+i}>.
struct SectionMatrix {
    Eigen::MatrixXcd entries;
    IndexRange rows;
    IndexRange cols;
    FunctionSystem sampling;
    FunctionSystem reconstruction;
};

/// Single cross-Gramian entry <e^rec_j, e^smp_i>.  Uses closed forms for
/// Fourier x {Haar, Legendre}; everything else falls back to quadrature.
std::complex<double> gram_entry(const FunctionSystem& sampling, long i,
                                const FunctionSystem& reconstruction, long j);

/// Same entry evaluated purely by composite quadrature (independent route,
/// used as the oracle in tests and as the universal fallback).
std::complex<double> gram_entry_quadrature(const FunctionSystem& sampling, long i,
                                           const FunctionSystem& reconstruction, long j,
                                           int panels = 0, int order = 12);

/// Assemble a dense finite section.
SectionMatrix assemble_section(const FunctionSystem& sampling, IndexRange rows,
                               const FunctionSystem& reconstruction, IndexRange cols);

/// One row of the section for many consecutive columns (batched closed
/// forms; used by coherence tail scans).
Eigen::VectorXcd gram_row(const FunctionSystem& sampling, long i,
                          const FunctionSystem& reconstruction, IndexRange cols);

/// y = A x or y = A* x on the dense entries.
Eigen::VectorXcd matvec(const SectionMatrix& A, const Eigen::VectorXcd& x,
                        bool adjoint = false);

/// True when the (sampling, reconstruction, ranges) combination admits the
/// FFT/FWT fast product: Fourier rows x Haar columns, both ranges starting
/// at 1 with equal dyadic counts.
bool has_fast_path(const SectionMatrix& A);

/// Fast y = A x (or A* x) via inverse Haar transform + FFT + diagonal
/// weights.  Requires has_fast_path(A).
Eigen::VectorXcd matvec_fast(const SectionMatrix& A, const Eigen::VectorXcd& x,
                             bool adjoint = false);

/// Smallest singular value of the dense section.
double min_singular_value(const SectionMatrix& A);

/// Binary SGRM round trip: magic "SGRM", u32 rows/cols/row_start/col_start,
/// then row-major complex64 (float32 re, float32 im) entries, little-endian.
void save_section(const SectionMatrix& A, const std::string& path);
SectionMatrix load_section(const std::string& path);

}  // namespace sgs
