#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "common.hpp"
#include "model.hpp"
#include "observables.hpp"
#include "state.hpp"

// Brute-force reference for the analytic engine: the full interaction
// Hamiltonian on qubit1 ⊗ qubit2 ⊗ Fock(0..N_f), evolved by dense spectral
// decomposition and reduced by explicit partial traces. Nothing in here uses
// the sector structure.

namespace jcpair::oracle
{

/// Lexicographic index in (qubit1 ⊗ qubit2 ⊗ Fock), qubit level 0 = e, 1 = g.
inline std::size_t basis_index(int q1, int q2, std::size_t fock, std::size_t fock_cutoff)
{
	return (static_cast<std::size_t>(q1) * 2 + static_cast<std::size_t>(q2)) * (fock_cutoff + 1) + fock;
}

template<typename Real = double>
struct HamiltonianMatrix
{
	MatrixXr<Real> h1; ///< λ(σ₁⁺σ₂⁻ + σ₁⁻σ₂⁺) + g(aσ₂⁺ + a†σ₂⁻)
	MatrixXr<Real> h0; ///< (ω/2)σ₁z + (ω/2)σ₂z + ω a†a
	std::size_t fock_cutoff;

	std::size_t dim() const { return 4 * (fock_cutoff + 1); }
};

/// Oracle cutoff for a field: two levels of headroom above the populated sectors.
template<typename Real>
std::size_t fock_cutoff_for(const ThermalField<Real>& field)
{
	return field.nmax() + 2;
}

template<typename Real>
HamiltonianMatrix<Real> build_hamiltonians(const ModelParams<Real>& params, std::size_t fock_cutoff)
{
	if(fock_cutoff < 2) {
		throw ConfigError("build_hamiltonians: Fock cutoff must be at least 2");
	}
	const std::size_t dim = 4 * (fock_cutoff + 1);
	HamiltonianMatrix<Real> h{MatrixXr<Real>::Zero(dim, dim), MatrixXr<Real>::Zero(dim, dim), fock_cutoff};
	auto idx = [fock_cutoff](int q1, int q2, std::size_t f) {
		return static_cast<Eigen::Index>(basis_index(q1, q2, f, fock_cutoff));
	};
	constexpr int e = 0, gr = 1;

	for(std::size_t f = 0; f <= fock_cutoff; ++f) {
		// σ₁⁺σ₂⁻ : |g₁e₂,f⟩ → |e₁g₂,f⟩
		h.h1(idx(e, gr, f), idx(gr, e, f)) = params.lambda();
		h.h1(idx(gr, e, f), idx(e, gr, f)) = params.lambda();
	}
	for(std::size_t f = 1; f <= fock_cutoff; ++f) {
		// aσ₂⁺ : |q₁,g₂,f⟩ → √f |q₁,e₂,f−1⟩
		const Real amp = params.g() * std::sqrt(static_cast<Real>(f));
		for(int q1 : {e, gr}) {
			h.h1(idx(q1, e, f - 1), idx(q1, gr, f)) = amp;
			h.h1(idx(q1, gr, f), idx(q1, e, f - 1)) = amp;
		}
	}
	const Real w = params.omega();
	for(int q1 : {e, gr}) {
		for(int q2 : {e, gr}) {
			const Real z = (q1 == e ? Real(1) : Real(-1)) + (q2 == e ? Real(1) : Real(-1));
			for(std::size_t f = 0; f <= fock_cutoff; ++f) {
				h.h0(idx(q1, q2, f), idx(q1, q2, f)) = w / Real(2) * z + w * static_cast<Real>(f);
			}
		}
	}
	return h;
}

/// Restriction of h1 to the sector span {|e₁e₂,n−1⟩, |e₁g₂,n⟩, |g₁e₂,n⟩, |g₁g₂,n+1⟩}.
/// Sector 0 has no |e₁e₂,−1⟩ and is 3×3.
template<typename Real>
MatrixXr<Real> sector_block(const HamiltonianMatrix<Real>& h, std::size_t n)
{
	if(n + 1 > h.fock_cutoff) {
		throw ConfigError("sector_block: sector " + std::to_string(n) + " exceeds the Fock cutoff");
	}
	std::vector<std::size_t> rows;
	if(n >= 1) {
		rows.push_back(basis_index(0, 0, n - 1, h.fock_cutoff));
	}
	rows.push_back(basis_index(0, 1, n, h.fock_cutoff));
	rows.push_back(basis_index(1, 0, n, h.fock_cutoff));
	rows.push_back(basis_index(1, 1, n + 1, h.fock_cutoff));
	const auto m = static_cast<Eigen::Index>(rows.size());
	MatrixXr<Real> block(m, m);
	for(Eigen::Index i = 0; i < m; ++i) {
		for(Eigen::Index j = 0; j < m; ++j) {
			block(i, j) = h.h1(static_cast<Eigen::Index>(rows[i]), static_cast<Eigen::Index>(rows[j]));
		}
	}
	return block;
}

/// Mixed state on the full tripartite space, kept as a weighted ensemble
/// ρ = Σⱼ wⱼ |ψⱼ⟩⟨ψⱼ| of evolved initial Fock components. `density()`
/// materializes the dense matrix.
template<typename Real = double>
struct TripartiteState
{
	MatrixXc<Real> components; ///< one column per ensemble member
	VectorXr<Real> weights;
	std::size_t fock_cutoff;

	std::size_t dim() const { return 4 * (fock_cutoff + 1); }

	MatrixXc<Real> density() const
	{
		const MatrixXc<Real> scaled = components * weights.template cast<Complex<Real>>().asDiagonal();
		return scaled * components.adjoint();
	}
};

/// Exact propagator exp(−i·h1·t) via one spectral decomposition of h1.
template<typename Real = double>
class Evolver
{
public:
	Evolver(const HamiltonianMatrix<Real>& h, const ThermalField<Real>& field)
		: fock_cutoff_{h.fock_cutoff}
	{
		if(h.fock_cutoff < fock_cutoff_for(field)) {
			throw ConfigError("oracle: Fock cutoff " + std::to_string(h.fock_cutoff) + " is below nmax + 2 = " +
			                  std::to_string(fock_cutoff_for(field)));
		}
		Eigen::SelfAdjointEigenSolver<MatrixXr<Real>> solver(h.h1);
		if(solver.info() != Eigen::Success) {
			throw NumericalError("oracle: diagonalization of h1 failed");
		}
		energies_ = solver.eigenvalues();
		vectors_ = solver.eigenvectors();

		// ρ(0) = Σ P_n |e₁,g₂,n⟩⟨e₁,g₂,n|
		const auto m = static_cast<Eigen::Index>(field.nmax() + 1);
		weights_ = VectorXr<Real>(m);
		initial_overlaps_ = MatrixXr<Real>(vectors_.cols(), m);
		for(Eigen::Index n = 0; n < m; ++n) {
			weights_(n) = field.weights()[static_cast<std::size_t>(n)];
			const auto row = static_cast<Eigen::Index>(basis_index(0, 1, static_cast<std::size_t>(n), fock_cutoff_));
			initial_overlaps_.col(n) = vectors_.row(row).transpose();
		}
	}

	TripartiteState<Real> evolve(Real t) const
	{
		const VectorXr<Real> cos_e = (energies_ * t).array().cos();
		const VectorXr<Real> sin_e = (energies_ * t).array().sin();
		// e^{−iEt} Vᵀ|ψ₀⟩, split into real and imaginary parts for two real products
		const MatrixXr<Real> re = cos_e.asDiagonal() * initial_overlaps_;
		const MatrixXr<Real> im = -(sin_e.asDiagonal() * initial_overlaps_);
		MatrixXc<Real> psi(vectors_.rows(), initial_overlaps_.cols());
		psi.real() = vectors_ * re;
		psi.imag() = vectors_ * im;
		return {std::move(psi), weights_, fock_cutoff_};
	}

	/// exp(−i·h1·t)|ψ⟩ for an arbitrary vector.
	VectorXc<Real> propagate(const VectorXc<Real>& psi, Real t) const
	{
		const VectorXc<Real> coeff = vectors_.transpose().template cast<Complex<Real>>() * psi;
		VectorXc<Real> phased(coeff.size());
		for(Eigen::Index i = 0; i < coeff.size(); ++i) {
			phased(i) = std::polar(Real(1), -energies_(i) * t) * coeff(i);
		}
		return vectors_.template cast<Complex<Real>>() * phased;
	}

	const VectorXr<Real>& energies() const { return energies_; }

private:
	std::size_t fock_cutoff_;
	VectorXr<Real> energies_;
	MatrixXr<Real> vectors_;
	MatrixXr<Real> initial_overlaps_;
	VectorXr<Real> weights_;
};

template<typename Real>
TripartiteState<Real> evolve(const HamiltonianMatrix<Real>& h, const ThermalField<Real>& field, Real t)
{
	return Evolver<Real>(h, field).evolve(t);
}

/// Tr_field: ρ_q(a,b) = Σ_f Σⱼ wⱼ ψⱼ(a,f) ψⱼ(b,f)*.
template<typename Real>
Matrix4c<Real> reduce_to_qubits(const TripartiteState<Real>& state)
{
	const auto levels = static_cast<Eigen::Index>(state.fock_cutoff + 1);
	Matrix4c<Real> rho = Matrix4c<Real>::Zero();
	for(Eigen::Index j = 0; j < state.components.cols(); ++j) {
		// column-major view: entry (f, two-qubit index)
		const Eigen::Map<const MatrixXc<Real>> psi(state.components.col(j).data(), levels, 4);
		rho.noalias() += state.weights(j) * (psi.transpose() * psi.conjugate());
	}
	return rho;
}

/// Same reduction on a dense tripartite density matrix.
template<typename Real>
Matrix4c<Real> reduce_to_qubits(const MatrixXc<Real>& rho, std::size_t fock_cutoff)
{
	const std::size_t levels = fock_cutoff + 1;
	Matrix4c<Real> out = Matrix4c<Real>::Zero();
	for(std::size_t a = 0; a < 4; ++a) {
		for(std::size_t b = 0; b < 4; ++b) {
			Complex<Real> acc = 0;
			for(std::size_t f = 0; f < levels; ++f) {
				acc += rho(static_cast<Eigen::Index>(a * levels + f), static_cast<Eigen::Index>(b * levels + f));
			}
			out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
		}
	}
	return out;
}

/// Partial trace over the field, checked against the X pattern (1e−10).
template<typename Real>
TwoQubitState<Real> partial_trace_field(const TripartiteState<Real>& state)
{
	return TwoQubitState<Real>::from_matrix(reduce_to_qubits(state), Real(1e-10));
}

/// Partial trace over qubit 2 and the field; the off-diagonal must stay below 1e−10.
template<typename Real>
Qubit1State<Real> partial_trace_to_qubit1(const TripartiteState<Real>& state)
{
	const Matrix4c<Real> rho = reduce_to_qubits(state);
	const Complex<Real> off = rho(0, 2) + rho(1, 3);
	if(std::abs(off) > Real(1e-10)) {
		throw StructuralError("partial_trace_to_qubit1: off-diagonal element " + std::to_string(double(std::abs(off))));
	}
	return {(rho(0, 0) + rho(1, 1)).real(), (rho(2, 2) + rho(3, 3)).real()};
}

} // namespace jcpair::oracle
