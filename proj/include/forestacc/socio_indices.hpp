#pragma once

#include "forestacc/error.hpp"
#include "forestacc/forest_matrix.hpp"
#include "forestacc/graph.hpp"

#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace forestacc {

namespace detail {

inline double mean(const std::vector<double>& xs)
{
	if (xs.empty())
		return 0.0;
	return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

/// Population variance (divides by the group size).
inline double population_variance(const std::vector<double>& xs)
{
	if (xs.empty())
		return 0.0;
	const double mu = mean(xs);
	double s = 0.0;
	for (double x : xs)
		s += (x - mu) * (x - mu);
	return s / static_cast<double>(xs.size());
}

} // namespace detail

/// Indices read off the accessibility matrix.
struct DerivativeIndices
{
	double alpha = 1.0;
	/// q_ii per member.
	std::vector<double> solitariness;
	/// Mean solitariness (rho).
	double dissociation = 0.0;
	/// Population variance of solitariness.
	double heterogeneity = 0.0;
	std::vector<double> provinciality_ratio;
	std::vector<double> provinciality_diff;
	/// Set when computed from a digraph; the properties behind these indices
	/// are established for undirected graphs.
	bool from_directed = false;
};

inline DerivativeIndices derivative_indices(const AccessibilityResult& acc)
{
	const std::size_t n = acc.n();
	DerivativeIndices out;
	out.alpha = acc.alpha;
	out.from_directed = acc.directed();
	out.solitariness.resize(n);
	for (std::size_t i = 0; i < n; ++i)
		out.solitariness[i] = acc.q(i, i);
	out.dissociation = detail::mean(out.solitariness);
	out.heterogeneity = detail::population_variance(out.solitariness);
	out.provinciality_ratio.resize(n);
	out.provinciality_diff.resize(n);
	for (std::size_t i = 0; i < n; ++i) {
		out.provinciality_ratio[i] = out.solitariness[i] / out.dissociation;
		out.provinciality_diff[i] = out.solitariness[i] - out.dissociation;
	}
	return out;
}

/// Classical sociometric indices of a choice digraph. Counts are divided by
/// n - 1, the most choices a member can make or receive.
struct ClassicalIndices
{
	std::vector<double> status;
	std::vector<double> effusiveness;
	std::vector<double> reciprocity;
	double density = 0.0;
	double cohesion = 0.0;
	double status_heterogeneity = 0.0;
	/// Divisor applied to per-member counts.
	double normalization = 0.0;
	/// True when degrees sum arc weights instead of counting distinct choices.
	bool weighted = false;
	/// Reciprocity is normalized by n - 1, not by the member's out-degree.
	std::string reciprocity_denominator = "n-1";
};

inline ClassicalIndices classical_indices(const WeightedMultigraph& g, bool weighted = false)
{
	if (!g.directed())
		throw Error(ErrorCode::UndirectedInput, "classical sociometric indices need a choice digraph");
	const std::size_t n = g.n();
	ClassicalIndices out;
	out.weighted = weighted;
	out.normalization = n > 1 ? static_cast<double>(n - 1) : 1.0;

	std::vector<double> in(n, 0.0);
	std::vector<double> outdeg(n, 0.0);
	std::set<std::pair<Vertex, Vertex>> choices;
	for (const auto& e : g.edges()) {
		if (weighted) {
			in[e.v] += e.weight;
			outdeg[e.u] += e.weight;
		}
		choices.insert({e.u, e.v});
	}
	if (!weighted)
		for (const auto& [u, v] : choices) {
			in[v] += 1.0;
			outdeg[u] += 1.0;
		}

	std::vector<double> mutual(n, 0.0);
	for (const auto& [u, v] : choices)
		if (u < v && choices.contains({v, u})) {
			mutual[u] += 1.0;
			mutual[v] += 1.0;
		}

	out.status.resize(n);
	out.effusiveness.resize(n);
	out.reciprocity.resize(n);
	for (std::size_t i = 0; i < n; ++i) {
		out.status[i] = in[i] / out.normalization;
		out.effusiveness[i] = outdeg[i] / out.normalization;
		out.reciprocity[i] = mutual[i] / out.normalization;
	}
	out.density = detail::mean(out.status);
	out.cohesion = detail::mean(out.reciprocity);
	out.status_heterogeneity = detail::population_variance(out.status);
	return out;
}

struct IndexReport
{
	std::optional<DerivativeIndices> derivative;
	std::optional<ClassicalIndices> classical;
};

/// Derivative indices always; classical ones when the graph is a digraph.
inline IndexReport index_report(const WeightedMultigraph& g, const AccessibilityResult& acc, bool weighted = false)
{
	IndexReport r;
	r.derivative = derivative_indices(acc);
	if (g.directed())
		r.classical = classical_indices(g, weighted);
	return r;
}

} // namespace forestacc
