#pragma once

#include "forestacc/error.hpp"
#include "forestacc/forest_matrix.hpp"
#include "forestacc/graph.hpp"
#include "forestacc/matrix.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace forestacc {

/// Strengthening of the k-t connection by `delta` (in edge-weight units).
struct EdgeIncrement
{
	Vertex k = 0;
	Vertex t = 0;
	double delta = 0.0;
};

/**
 * What changed under an increment: Delta Q = h * outer(left, right) with
 * left_i = q_ik - q_it and right_j = q_jt - q_jk. `delta_q` is stored
 * separately so a report can be audited against its defining vectors.
 */
struct DeltaReport
{
	EdgeIncrement increment;
	double h = 0.0;
	std::vector<double> left;
	std::vector<double> right;
	Matrix delta_q;
	/// Sign of each Delta q_ij: -1, 0 or +1.
	BasicMatrix<int> signs;
	/// Closed-form Delta d_ij = -(1/4)(d_ik - d_it + d_jt - d_jk)^2 h.
	Matrix delta_d;
};

struct IncrementResult
{
	AccessibilityResult acc;
	DistanceMatrix distance;
	DeltaReport report;
};

namespace detail {

inline void check_increment(const AccessibilityResult& acc, const EdgeIncrement& inc)
{
	if (acc.directed())
		throw Error(ErrorCode::DirectedInput, "edge increments are defined for undirected graphs");
	if (inc.k >= acc.n() || inc.t >= acc.n())
		throw Error(ErrorCode::OutOfRangeEndpoint, "increment endpoint out of range");
	if (inc.k == inc.t)
		throw Error(ErrorCode::SelfLoop, "increment endpoints coincide at " + std::to_string(inc.k));
	if (!(inc.delta > 0.0) || !std::isfinite(inc.delta))
		throw Error(ErrorCode::NonPositiveWeight, "increment must be positive, got " + std::to_string(inc.delta));
}

inline int sign_of(double x) noexcept { return (x > 0.0) - (x < 0.0); }

} // namespace detail

/**
 * Sherman-Morrison update of Q and d for a strengthened k-t connection,
 * without refactorizing. The graph-unit increment is scaled by alpha to
 * act on I + alpha L. Adding a new k-t edge is the same operation.
 */
inline IncrementResult apply_increment(const AccessibilityResult& acc, const DistanceMatrix& d,
                                       const EdgeIncrement& inc)
{
	detail::check_increment(acc, inc);
	if (d.n() != acc.n())
		throw Error(ErrorCode::InvalidArgument, "distance matrix size differs from Q");

	const std::size_t n = acc.n();
	const Vertex k = inc.k;
	const Vertex t = inc.t;
	const Matrix& q = acc.q;
	const double scaled = acc.alpha * inc.delta;

	DeltaReport rep;
	rep.increment = inc;
	rep.h = 1.0 / (d(k, t) + 1.0 / scaled);
	rep.left.resize(n);
	rep.right.resize(n);
	for (std::size_t i = 0; i < n; ++i) {
		rep.left[i] = q(i, k) - q(i, t);
		rep.right[i] = q(i, t) - q(i, k);
	}
	rep.delta_q = Matrix(n, n);
	rep.signs = BasicMatrix<int>(n, n);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j) {
			const double r = rep.left[i] * rep.right[j];
			rep.delta_q(i, j) = rep.h * r;
			rep.signs(i, j) = detail::sign_of(r);
		}

	rep.delta_d = Matrix(n, n);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j) {
			const double s = d(i, k) - d(i, t) + d(j, t) - d(j, k);
			rep.delta_d(i, j) = -0.25 * s * s * rep.h;
		}

	IncrementResult out;
	out.acc = acc;
	out.acc.q += rep.delta_q;
	out.acc.det_w = acc.det_w * (1.0 + scaled * d(k, t));
	out.acc.provenance = Provenance::RankOneUpdate;
	out.acc.updates_since_solve = acc.updates_since_solve + 1;
	out.distance = distance_from(out.acc.q);
	out.report = std::move(rep);
	return out;
}

/// True iff the report's Delta Q is h times the outer product of its vectors within `tol`.
inline bool rank_one_certificate(const DeltaReport& rep, double tol = 1e-10)
{
	const std::size_t n = rep.left.size();
	if (rep.right.size() != n || rep.delta_q.rows() != n || rep.delta_q.cols() != n)
		return false;
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
			if (std::abs(rep.delta_q(i, j) - rep.h * rep.left[i] * rep.right[j]) > tol)
				return false;
	return true;
}

/**
 * A what-if chain of increments on one graph. Updates are rank-one, but
 * every `refresh_interval` steps Q is re-solved from the accumulated graph
 * so rounding does not build up.
 */
class UpdateChain
{
public:
	explicit UpdateChain(WeightedMultigraph g, double alpha = 1.0, std::size_t refresh_interval = 32,
	                     Tolerances tol = {})
	  : graph_(std::move(g))
	  , tol_(tol)
	  , refresh_interval_(refresh_interval)
	{
		if (graph_.directed())
			throw Error(ErrorCode::DirectedInput, "edge increments are defined for undirected graphs");
		if (refresh_interval_ == 0)
			throw Error(ErrorCode::InvalidArgument, "refresh interval must be at least 1");
		acc_ = forest_accessibility(graph_, alpha, tol_);
		distance_ = forest_distance(acc_);
	}

	/// Applies one increment; the returned report always describes the
	/// rank-one step, while the state may afterwards be refreshed.
	DeltaReport apply(const EdgeIncrement& inc)
	{
		auto step = apply_increment(acc_, distance_, inc);
		graph_ = with_edge(graph_, inc.k, inc.t, inc.delta);
		acc_ = std::move(step.acc);
		distance_ = std::move(step.distance);
		if (acc_.updates_since_solve >= refresh_interval_) {
			acc_ = forest_accessibility(graph_, acc_.alpha, tol_);
			distance_ = forest_distance(acc_);
			++refreshes_;
		}
		return std::move(step.report);
	}

	const WeightedMultigraph& graph() const noexcept { return graph_; }
	const AccessibilityResult& accessibility() const noexcept { return acc_; }
	const DistanceMatrix& distance() const noexcept { return distance_; }
	std::size_t refreshes() const noexcept { return refreshes_; }

private:
	WeightedMultigraph graph_;
	Tolerances tol_;
	std::size_t refresh_interval_;
	AccessibilityResult acc_;
	DistanceMatrix distance_;
	std::size_t refreshes_ = 0;
};

} // namespace forestacc
