#pragma once

// Brute-force spanning forest enumeration. This is the ground truth the
// linear-algebra routes are checked against; it must not call into them
// except for the cofactor determinants that the matrix-tree check is about.

#include "forestacc/error.hpp"
#include "forestacc/graph.hpp"
#include "forestacc/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace forestacc {

struct EnumerationLimits
{
	std::size_t max_vertices = 10;
	std::size_t max_records = 16;
};

/// A spanning rooted forest (undirected) or spanning diverging forest (directed).
struct SpanningForest
{
	/// Indices into the graph's record list, ascending.
	std::vector<std::size_t> edges;
	/// Component id of each vertex.
	std::vector<std::size_t> component;
	/// Root of each component.
	std::vector<Vertex> roots;
	/// Product of member edge weights; 1 for the edgeless forest.
	double weight = 1.0;

	std::size_t tree_count() const noexcept { return roots.size(); }
	Vertex root_of(Vertex v) const { return roots[component[v]]; }
	/// `member` lies in the tree rooted at (diverging from) `root`.
	bool in_tree_rooted_at(Vertex root, Vertex member) const { return root_of(member) == root; }
};

namespace detail {

inline void check_enumeration_size(const WeightedMultigraph& g, const EnumerationLimits& limits)
{
	if (g.n() > limits.max_vertices || g.edge_count() > limits.max_records)
		throw Error(ErrorCode::SizeGuardExceeded,
		            "enumeration limited to n <= " + std::to_string(limits.max_vertices) + " and <= " +
		              std::to_string(limits.max_records) + " records (got n=" + std::to_string(g.n()) +
		              ", m=" + std::to_string(g.edge_count()) + ")");
	if (limits.max_records >= 63)
		throw Error(ErrorCode::SizeGuardExceeded, "record guard must stay below 63");
}

/// Acyclic subsets of records (underlying undirected sense), ascending by bitmask.
template <typename Visit>
void for_each_acyclic_subset(const WeightedMultigraph& g, Visit&& visit)
{
	const std::size_t m = g.edge_count();
	const auto edges = g.edges();
	std::vector<std::size_t> chosen;
	for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
		DisjointSets sets(g.n());
		chosen.clear();
		bool acyclic = true;
		for (std::size_t p = 0; p < m && acyclic; ++p) {
			if (!(mask >> p & 1u))
				continue;
			acyclic = sets.unite(edges[p].u, edges[p].v);
			chosen.push_back(p);
		}
		if (!acyclic)
			continue;

		std::vector<std::size_t> component(g.n(), g.n());
		std::vector<std::size_t> root_to_id(g.n(), g.n());
		std::size_t count = 0;
		for (Vertex v = 0; v < g.n(); ++v) {
			const auto r = sets.find(v);
			if (root_to_id[r] == g.n())
				root_to_id[r] = count++;
			component[v] = root_to_id[r];
		}
		double weight = 1.0;
		for (auto p : chosen)
			weight *= edges[p].weight;
		visit(chosen, component, count, weight);
	}
}

} // namespace detail

/// Every spanning rooted forest of an undirected multigraph, each acyclic
/// edge subset once per root assignment.
inline std::vector<SpanningForest> enumerate_rooted_forests(const WeightedMultigraph& g,
                                                            const EnumerationLimits& limits = {})
{
	if (g.directed())
		throw Error(ErrorCode::DirectedInput, "rooted forests are enumerated on undirected graphs");
	detail::check_enumeration_size(g, limits);

	std::vector<SpanningForest> out;
	detail::for_each_acyclic_subset(
	  g, [&](const std::vector<std::size_t>& chosen, const std::vector<std::size_t>& component, std::size_t count,
	         double weight) {
		  std::vector<std::vector<Vertex>> members(count);
		  for (Vertex v = 0; v < g.n(); ++v)
			  members[component[v]].push_back(v);

		  // Mixed-radix counter over the root choice of every tree.
		  std::vector<std::size_t> pick(count, 0);
		  while (true) {
			  SpanningForest f;
			  f.edges = chosen;
			  f.component = component;
			  f.roots.resize(count);
			  for (std::size_t c = 0; c < count; ++c)
				  f.roots[c] = members[c][pick[c]];
			  f.weight = weight;
			  out.push_back(std::move(f));

			  std::size_t c = 0;
			  for (; c < count; ++c) {
				  if (++pick[c] < members[c].size())
					  break;
				  pick[c] = 0;
			  }
			  if (c == count)
				  break;
		  }
	  });
	return out;
}

/// Every spanning diverging forest of a multidigraph. An arc subset
/// qualifies iff its underlying graph is acyclic and no vertex has two
/// entering arcs; the root of each tree is its vertex without entering arcs.
inline std::vector<SpanningForest> enumerate_diverging_forests(const WeightedMultigraph& g,
                                                               const EnumerationLimits& limits = {})
{
	if (!g.directed())
		throw Error(ErrorCode::UndirectedInput, "diverging forests are enumerated on digraphs");
	detail::check_enumeration_size(g, limits);

	const auto arcs = g.edges();
	std::vector<SpanningForest> out;
	std::vector<unsigned> indegree(g.n());
	detail::for_each_acyclic_subset(
	  g, [&](const std::vector<std::size_t>& chosen, const std::vector<std::size_t>& component, std::size_t count,
	         double weight) {
		  std::fill(indegree.begin(), indegree.end(), 0u);
		  for (auto p : chosen)
			  if (++indegree[arcs[p].v] > 1)
				  return;
		  SpanningForest f;
		  f.edges = chosen;
		  f.component = component;
		  f.roots.assign(count, g.n());
		  for (Vertex v = 0; v < g.n(); ++v)
			  if (indegree[v] == 0)
				  f.roots[component[v]] = v;
		  f.weight = weight;
		  out.push_back(std::move(f));
	  });
	return out;
}

inline std::vector<SpanningForest> enumerate_forests(const WeightedMultigraph& g, const EnumerationLimits& limits = {})
{
	return g.directed() ? enumerate_diverging_forests(g, limits) : enumerate_rooted_forests(g, limits);
}

/// Total weight of the forests accepted by `filter`; 0 for an empty selection.
template <typename Filter>
double weight_of_set(std::span<const SpanningForest> forests, Filter&& filter)
{
	double total = 0.0;
	for (const auto& f : forests)
		if (filter(f))
			total += f.weight;
	return total;
}

inline double weight_of_set(std::span<const SpanningForest> forests)
{
	return weight_of_set(forests, [](const SpanningForest&) { return true; });
}

/// Accessibilities from enumeration alone: q_ij is the weight share of
/// forests in which i lies in the tree rooted at (diverging from) j.
inline Matrix oracle_Q(const WeightedMultigraph& g, const EnumerationLimits& limits = {})
{
	const auto forests = enumerate_forests(g, limits);
	const std::size_t n = g.n();
	Matrix numer(n, n);
	double total = 0.0;
	for (const auto& f : forests) {
		total += f.weight;
		for (Vertex i = 0; i < n; ++i)
			numer(i, f.root_of(i)) += f.weight;
	}
	numer *= 1.0 / total;
	return numer;
}

/// Weight of the spanning trees rooted at (diverging from) `root`. For an
/// undirected graph every root gives the plain spanning-tree weight.
inline double spanning_tree_weight(std::span<const SpanningForest> forests, Vertex root)
{
	return weight_of_set(forests, [root](const SpanningForest& f) {
		return f.tree_count() == 1 && f.roots.front() == root;
	});
}

struct CofactorCertificate
{
	bool passed = false;
	double max_error = 0.0;
	/// Signed cofactors L^{ij} from minor determinants.
	Matrix cofactors;
	/// Enumerated spanning-tree weight per root.
	std::vector<double> tree_weights;

	explicit operator bool() const noexcept { return passed; }
};

/**
 * Matrix-tree check: every cofactor L^{ij} against enumerated spanning trees.
 * Undirected, all cofactors equal the spanning-tree weight; directed, the
 * cofactors of row i equal the weight of trees diverging from i. Relative
 * tolerance `tol` with a floor of 1.
 */
inline CofactorCertificate tree_cofactor_check(const WeightedMultigraph& g, const EnumerationLimits& limits = {},
                                               double tol = 1e-9)
{
	const auto forests = enumerate_forests(g, limits);
	const auto l = kirchhoff(g).entries;
	const std::size_t n = g.n();

	CofactorCertificate cert;
	cert.cofactors = Matrix(n, n);
	cert.tree_weights.resize(n);
	for (Vertex i = 0; i < n; ++i)
		cert.tree_weights[i] = spanning_tree_weight(forests, g.directed() ? i : Vertex{0});

	bool ok = true;
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j) {
			const double sign = (i + j) % 2 == 0 ? 1.0 : -1.0;
			const double cof = n == 1 ? 1.0 : sign * determinant(minor_matrix(l, i, j));
			cert.cofactors(i, j) = cof;
			const double expected = cert.tree_weights[i];
			const double err = std::abs(cof - expected);
			cert.max_error = std::max(cert.max_error, err);
			if (err > tol * std::max(1.0, std::abs(expected)))
				ok = false;
		}
	cert.passed = ok;
	return cert;
}

} // namespace forestacc
