#pragma once

#include "forestacc/error.hpp"
#include "forestacc/graph.hpp"
#include "forestacc/matrix.hpp"

#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

namespace forestacc {

struct Tolerances
{
	/// Row/column sums, symmetry and metric checks.
	double stochastic = 1e-9;
	/// Entries below this count as structural zeros.
	double structural_zero = 1e-12;
	/// Largest asymmetry of an undirected Q that is still averaged away.
	double symmetry = 1e-9;
	/// Condition number of I + aL beyond which the solve is refused.
	double max_condition = 1e14;
};

enum class Provenance { DirectSolve, RankOneUpdate };

/// Relative forest accessibilities Q = (I + alpha L)^{-1} and det(I + alpha L).
struct AccessibilityResult
{
	double alpha = 1.0;
	Matrix q;
	double det_w = 1.0;
	Orientation orientation = Orientation::Undirected;
	Provenance provenance = Provenance::DirectSolve;
	/// Rank-one updates applied since the last direct solve.
	std::size_t updates_since_solve = 0;

	std::size_t n() const noexcept { return q.rows(); }
	bool directed() const noexcept { return orientation == Orientation::Directed; }
};

/// Forest metric d_ij = q_ii + q_jj - q_ij - q_ji.
struct DistanceMatrix
{
	Matrix d;

	std::size_t n() const noexcept { return d.rows(); }
	double operator()(std::size_t i, std::size_t j) const noexcept { return d(i, j); }
};

inline Matrix forest_system(const KirchhoffMatrix& l, double alpha)
{
	const std::size_t n = l.n();
	Matrix w = Matrix::identity(n);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
			w(i, j) += alpha * l(i, j);
	return w;
}

/**
 * Solves (I + alpha L) Q = I by LU with partial pivoting.
 *
 * For undirected input the solved Q is symmetrized by averaging with its
 * transpose, provided the raw asymmetry is below `tol.symmetry`; a larger
 * asymmetry raises AsymmetricResult. Throws SingularMatrix when the
 * 1-norm condition number of I + alpha L exceeds `tol.max_condition`,
 * which cannot happen for a genuine Kirchhoff matrix.
 */
inline AccessibilityResult forest_accessibility(const KirchhoffMatrix& l, double alpha = 1.0,
                                                const Tolerances& tol = {})
{
	if (!(alpha > 0.0) || !std::isfinite(alpha))
		throw Error(ErrorCode::InvalidArgument, "alpha must be positive, got " + std::to_string(alpha));

	const Matrix w = forest_system(l, alpha);
	const LuDecomposition<double> lu(w);
	if (lu.singular())
		throw Error(ErrorCode::SingularMatrix, "I + alpha L has a zero pivot");

	AccessibilityResult acc;
	acc.alpha = alpha;
	acc.orientation = l.orientation;
	acc.q = lu.inverse();
	acc.det_w = lu.determinant();

	const double condition = norm_1(w) * norm_1(acc.q);
	if (!std::isfinite(condition) || condition > tol.max_condition) {
		std::ostringstream msg;
		msg << "condition estimate " << condition << " exceeds " << tol.max_condition;
		throw Error(ErrorCode::SingularMatrix, msg.str());
	}

	if (l.orientation == Orientation::Undirected) {
		const std::size_t n = acc.n();
		const double asym = max_abs_diff(acc.q, acc.q.transposed());
		if (asym > tol.symmetry) {
			std::ostringstream msg;
			msg << "undirected Q asymmetric by " << asym;
			throw Error(ErrorCode::AsymmetricResult, msg.str());
		}
		for (std::size_t i = 0; i < n; ++i)
			for (std::size_t j = i + 1; j < n; ++j) {
				const double avg = 0.5 * (acc.q(i, j) + acc.q(j, i));
				acc.q(i, j) = avg;
				acc.q(j, i) = avg;
			}
	}
	return acc;
}

inline AccessibilityResult forest_accessibility(const WeightedMultigraph& g, double alpha = 1.0,
                                                const Tolerances& tol = {})
{
	return forest_accessibility(kirchhoff(g), alpha, tol);
}

inline DistanceMatrix distance_from(const Matrix& q)
{
	const std::size_t n = q.rows();
	DistanceMatrix out{Matrix(n, n)};
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
			out.d(i, j) = i == j ? 0.0 : q(i, i) + q(j, j) - q(i, j) - q(j, i);
	return out;
}

/// Forest distance. Only undirected inputs are accepted: the metric
/// property is not established for digraphs.
inline DistanceMatrix forest_distance(const AccessibilityResult& acc)
{
	if (acc.directed())
		throw Error(ErrorCode::DirectedInput, "forest distance is defined for undirected graphs only");
	return distance_from(acc.q);
}

/// True iff q_ij > tol exactly when i and j share a block of `partition`.
inline bool block_structure(const AccessibilityResult& acc, const std::vector<std::vector<Vertex>>& partition,
                            double tol = 1e-12)
{
	const std::size_t n = acc.n();
	std::vector<std::size_t> block(n, n);
	std::size_t covered = 0;
	for (std::size_t b = 0; b < partition.size(); ++b)
		for (Vertex v : partition[b]) {
			if (v >= n || block[v] != n)
				throw Error(ErrorCode::PartitionMismatch, "partition is not a partition of the vertex set");
			block[v] = b;
			++covered;
		}
	if (covered != n)
		throw Error(ErrorCode::PartitionMismatch,
		            "partition covers " + std::to_string(covered) + " of " + std::to_string(n) + " vertices");

	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
			if ((acc.q(i, j) > tol) != (block[i] == block[j]))
				return false;
	return true;
}

/// Human-readable list of violated AccessibilityResult invariants; empty when all hold.
inline std::vector<std::string> invariant_violations(const AccessibilityResult& acc, const Tolerances& tol = {})
{
	std::vector<std::string> out;
	const std::size_t n = acc.n();
	auto report = [&](std::string what, std::size_t i, std::size_t j, double value) {
		std::ostringstream msg;
		msg.precision(17);
		msg << what << " at (" << i << "," << j << "): " << value;
		out.push_back(msg.str());
	};

	if (acc.det_w < 1.0 - tol.stochastic)
		report("det(I + aL) below 1", 0, 0, acc.det_w);
	for (std::size_t i = 0; i < n; ++i) {
		double row = 0.0;
		double col = 0.0;
		for (std::size_t j = 0; j < n; ++j) {
			const double x = acc.q(i, j);
			if (x < -tol.structural_zero || x > 1.0 + tol.stochastic)
				report("entry outside [0,1]", i, j, x);
			row += x;
			col += acc.q(j, i);
		}
		if (std::abs(row - 1.0) > tol.stochastic)
			report("row sum differs from 1", i, i, row);
		if (acc.directed())
			continue;
		if (std::abs(col - 1.0) > tol.stochastic)
			report("column sum differs from 1", i, i, col);
		for (std::size_t j = 0; j < n; ++j) {
			if (j != i && !(acc.q(i, i) > acc.q(i, j)))
				report("diagonal not dominant", i, j, acc.q(i, i) - acc.q(i, j));
			if (std::abs(acc.q(i, j) - acc.q(j, i)) > tol.stochastic)
				report("asymmetric", i, j, acc.q(i, j) - acc.q(j, i));
		}
	}
	return out;
}

/// Violated metric axioms of `dist`: zero diagonal, positivity off the
/// diagonal, symmetry and the triangle inequality (within `tol`).
inline std::vector<std::string> metric_violations(const DistanceMatrix& dist, double tol = 1e-9)
{
	std::vector<std::string> out;
	const std::size_t n = dist.n();
	auto report = [&](const char* what, std::size_t i, std::size_t j, double value) {
		std::ostringstream msg;
		msg.precision(17);
		msg << what << " at (" << i << "," << j << "): " << value;
		out.push_back(msg.str());
	};
	for (std::size_t i = 0; i < n; ++i) {
		if (dist(i, i) != 0.0)
			report("nonzero diagonal", i, i, dist(i, i));
		for (std::size_t j = 0; j < n; ++j) {
			if (dist(i, j) < -tol)
				report("negative distance", i, j, dist(i, j));
			if (i != j && !(dist(i, j) > 0.0))
				report("distinct vertices at distance 0", i, j, dist(i, j));
			if (std::abs(dist(i, j) - dist(j, i)) > tol)
				report("asymmetric distance", i, j, dist(i, j) - dist(j, i));
			for (std::size_t k = 0; k < n; ++k)
				if (dist(i, j) + dist(j, k) < dist(i, k) - tol)
					report("triangle inequality fails", i, k, dist(i, j) + dist(j, k) - dist(i, k));
		}
	}
	return out;
}

} // namespace forestacc
