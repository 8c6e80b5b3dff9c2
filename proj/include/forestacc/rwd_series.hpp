#pragma once

// Routes with drains: Q as the Neumann series of M = -alpha L, and a
// combinatorial enumerator for the even/odd-drain route weights whose
// difference is (M^t)_ij.

#include "forestacc/error.hpp"
#include "forestacc/graph.hpp"
#include "forestacc/matrix.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace forestacc {

/// Edge-weight ceiling (2 a* (n-1))^{-1} under which the series converges.
struct WeightBound
{
	/// False for n < 2, where no edge exists and the bound is infinite.
	bool bounded = false;
	double value = std::numeric_limits<double>::infinity();
	/// a*: the largest number of parallel records between one pair.
	std::size_t max_multiplicity = 0;
	/// Every record weight lies strictly below `value`.
	bool satisfied = true;
};

inline WeightBound weight_bound(const WeightedMultigraph& g)
{
	WeightBound b;
	b.max_multiplicity = max_multiplicity(g);
	if (g.n() < 2)
		return b;
	b.bounded = true;
	const double a = static_cast<double>(std::max<std::size_t>(b.max_multiplicity, 1));
	b.value = 1.0 / (2.0 * a * static_cast<double>(g.n() - 1));
	for (const auto& e : g.edges())
		if (!(e.weight < b.value))
			b.satisfied = false;
	return b;
}

struct SeriesResult
{
	/// sum_{t=0..T} M^t.
	Matrix sum;
	/// Infinity norm of each term M^t, t = 0..T.
	std::vector<double> term_norms;
	/// alpha * max_i sum_j |l_ij|; below 1 guarantees convergence.
	double gershgorin_radius = 0.0;

	bool gershgorin_safe() const noexcept { return gershgorin_radius < 1.0; }

	/// Norms never shrink from one term to the next: a divergence witness.
	bool terms_nondecreasing() const noexcept
	{
		for (std::size_t t = 1; t < term_norms.size(); ++t)
			if (term_norms[t] < term_norms[t - 1])
				return false;
		return term_norms.size() > 1;
	}
};

/// Partial sum of the Neumann series for (I + alpha L)^{-1}. Computes
/// regardless of convergence; inspect the diagnostics.
inline SeriesResult series_partial_sum(const KirchhoffMatrix& l, std::size_t terms, double alpha = 1.0)
{
	if (!(alpha > 0.0))
		throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
	const std::size_t n = l.n();
	Matrix m(n, n);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
			m(i, j) = -alpha * l(i, j);

	SeriesResult out;
	out.gershgorin_radius = norm_inf(m);
	Matrix power = Matrix::identity(n);
	out.sum = power;
	out.term_norms.push_back(norm_inf(power));
	for (std::size_t t = 1; t <= terms; ++t) {
		power = power * m;
		out.sum += power;
		out.term_norms.push_back(norm_inf(power));
	}
	return out;
}

/// Total weights of length-t routes with drains from i to j, split by drain parity.
struct RwdCount
{
	Vertex i = 0;
	Vertex j = 0;
	std::size_t length = 0;
	double even_weight = 0.0;
	double odd_weight = 0.0;

	double signed_weight() const noexcept { return even_weight - odd_weight; }
};

struct RwdLimits
{
	std::size_t max_vertices = 5;
	std::size_t max_length = 6;
};

namespace detail {

struct RouteStep
{
	Vertex next;
	double weight;
	bool drain;
};

// Legal extensions from each vertex. Undirected: any incident edge either
// moves to its other end or is taken as a drain in place. Directed routes
// run against arc orientation (a step a -> b uses an arc b -> a) and drains
// at a use arcs entering a; that is what makes the parities add up to
// powers of -L under the converging-arc Kirchhoff convention.
inline std::vector<std::vector<RouteStep>> route_steps(const WeightedMultigraph& g)
{
	std::vector<std::vector<RouteStep>> steps(g.n());
	for (const auto& e : g.edges()) {
		steps[e.v].push_back({e.u, e.weight, false});
		steps[e.v].push_back({e.v, e.weight, true});
		if (!g.directed()) {
			steps[e.u].push_back({e.v, e.weight, false});
			steps[e.u].push_back({e.u, e.weight, true});
		}
	}
	return steps;
}

inline void extend_routes(const std::vector<std::vector<RouteStep>>& steps, Vertex at, Vertex target,
                          std::size_t remaining, double weight, bool odd, RwdCount& acc)
{
	if (remaining == 0) {
		if (at == target)
			(odd ? acc.odd_weight : acc.even_weight) += weight;
		return;
	}
	for (const auto& s : steps[at])
		extend_routes(steps, s.next, target, remaining - 1, weight * s.weight, odd != s.drain, acc);
}

} // namespace detail

/// Exhaustive RWD enumeration. Parallel records are distinct edges.
inline RwdCount enumerate_rwd(const WeightedMultigraph& g, Vertex i, Vertex j, std::size_t length,
                              const RwdLimits& limits = {})
{
	if (i >= g.n() || j >= g.n())
		throw Error(ErrorCode::OutOfRangeEndpoint, "route endpoint out of range");
	if (g.n() > limits.max_vertices || length > limits.max_length)
		throw Error(ErrorCode::SizeGuardExceeded,
		            "route enumeration limited to n <= " + std::to_string(limits.max_vertices) +
		              " and length <= " + std::to_string(limits.max_length));
	RwdCount out{i, j, length, 0.0, 0.0};
	detail::extend_routes(detail::route_steps(g), i, j, length, 1.0, false, out);
	return out;
}

} // namespace forestacc
