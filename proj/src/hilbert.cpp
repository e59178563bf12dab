#include "flashlat/hilbert.hpp"

#include <cmath>
#include <stdexcept>

namespace flashlat {

long CutSpace::dim() const {
    long d = 1;
    for (int i = 0; i < particles; ++i) d *= single_dim();
    return d;
}

int CutSpace::slot_index(long b, int slot) const {
    long stride = 1;
    for (int i = slot + 1; i < particles; ++i) stride *= single_dim();
    return static_cast<int>((b / stride) % single_dim());
}

long CutSpace::with_slot_index(long b, int slot, int p) const {
    long stride = 1;
    for (int i = slot + 1; i < particles; ++i) stride *= single_dim();
    const long old = (b / stride) % single_dim();
    return b + (static_cast<long>(p) - old) * stride;
}

DenseOp position_projector(const CutSpace& space, int slot, const std::vector<int>& sites) {
    std::vector<char> in(static_cast<std::size_t>(space.sites()), 0);
    for (int x : sites) in[static_cast<std::size_t>(x)] = 1;
    const long dim = space.dim();
    Mat m = Mat::Zero(dim, dim);
    for (long b = 0; b < dim; ++b) {
        if (in[static_cast<std::size_t>(space.slot_site(b, slot))]) m(b, b) = 1.0;
    }
    return DenseOp{std::move(m), space, space};
}

Eigen::VectorXd mult_diagonal(const CutSpace& space, int slot,
                              const std::function<double(int)>& f) {
    std::vector<double> values(static_cast<std::size_t>(space.sites()));
    for (int x = 0; x < space.sites(); ++x) values[static_cast<std::size_t>(x)] = f(x);
    const long dim = space.dim();
    Eigen::VectorXd d(dim);
    for (long b = 0; b < dim; ++b) {
        d(b) = values[static_cast<std::size_t>(space.slot_site(b, slot))];
    }
    return d;
}

DenseOp mult_operator(const CutSpace& space, int slot, const std::function<double(int)>& f) {
    return DenseOp{mult_diagonal(space, slot, f).cast<std::complex<double>>().asDiagonal(),
                   space, space};
}

DenseOp hermitian_sqrt(const DenseOp& op) {
    Eigen::SelfAdjointEigenSolver<Mat> solver(op.matrix);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_sqrt: eigendecomposition failed");
    }
    Eigen::VectorXd ev = solver.eigenvalues();
    for (long i = 0; i < ev.size(); ++i) {
        if (ev(i) < -1e-8) {
            throw std::runtime_error("hermitian_sqrt: operator has a significantly negative "
                                     "eigenvalue; upstream normalization is broken");
        }
        ev(i) = ev(i) > 0.0 ? std::sqrt(ev(i)) : 0.0;
    }
    Mat root = solver.eigenvectors() * ev.cast<std::complex<double>>().asDiagonal() *
               solver.eigenvectors().adjoint();
    return DenseOp{std::move(root), op.domain, op.codomain};
}

double operator_norm(const Mat& m) {
    return Eigen::JacobiSVD<Mat>(m).singularValues()(0);
}

}  // namespace flashlat
