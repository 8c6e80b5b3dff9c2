#include "forestacc/socio_indices.hpp"

#include "support/generators.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

namespace forestacc {
namespace {

constexpr double exact = 1e-12;

void expect_near(const std::vector<double>& actual, const std::vector<double>& expected, double tol = exact)
{
	ASSERT_EQ(actual.size(), expected.size());
	for (std::size_t i = 0; i < actual.size(); ++i)
		EXPECT_NEAR(actual[i], expected[i], tol) << "index " << i;
}

TEST(DerivativeIndices, PathOnThreeVertices)
{
	const auto idx = derivative_indices(forest_accessibility(build_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}}, false)));
	expect_near(idx.solitariness, {5.0 / 8, 1.0 / 2, 5.0 / 8});
	// Mean of (5/8, 1/2, 5/8).
	EXPECT_NEAR(idx.dissociation, 7.0 / 12, exact);
	EXPECT_NEAR(idx.heterogeneity, 1.0 / 288, exact);
	expect_near(idx.provinciality_diff, {1.0 / 24, -1.0 / 12, 1.0 / 24});
	expect_near(idx.provinciality_ratio, {15.0 / 14, 6.0 / 7, 15.0 / 14});
	EXPECT_FALSE(idx.from_directed);
}

TEST(DerivativeIndices, SingleEdge)
{
	const auto idx = derivative_indices(forest_accessibility(build_graph(2, {{0, 1, 1.0}}, false)));
	expect_near(idx.solitariness, {2.0 / 3, 2.0 / 3});
	EXPECT_NEAR(idx.dissociation, 2.0 / 3, exact);
	EXPECT_NEAR(idx.heterogeneity, 0.0, exact);
	expect_near(idx.provinciality_ratio, {1.0, 1.0});
}

TEST(DerivativeIndices, EdgelessGroupIsFullyDissociated)
{
	const auto idx = derivative_indices(forest_accessibility(build_graph(4, {}, false), 2.0));
	expect_near(idx.solitariness, {1, 1, 1, 1});
	EXPECT_EQ(idx.dissociation, 1.0);
	EXPECT_EQ(idx.heterogeneity, 0.0);
	EXPECT_EQ(idx.alpha, 2.0);
}

TEST(DerivativeIndices, DirectedInputIsFlagged)
{
	const auto idx = derivative_indices(forest_accessibility(build_graph(2, {{0, 1, 1.0}}, true)));
	EXPECT_TRUE(idx.from_directed);
	expect_near(idx.solitariness, {1.0, 0.5});
}

WeightedMultigraph small_choices()
{
	return build_graph(3, {{0, 1, 1.0}, {1, 0, 1.0}, {0, 2, 1.0}}, true);
}

TEST(ClassicalIndices, SmallChoiceDigraph)
{
	const auto c = classical_indices(small_choices());
	expect_near(c.status, {0.5, 0.5, 0.5});
	expect_near(c.effusiveness, {1.0, 0.5, 0.0});
	expect_near(c.reciprocity, {0.5, 0.5, 0.0});
	EXPECT_NEAR(c.density, 0.5, exact);
	EXPECT_NEAR(c.cohesion, 1.0 / 3, exact);
	EXPECT_NEAR(c.status_heterogeneity, 0.0, exact);
	EXPECT_EQ(c.normalization, 2.0);
	EXPECT_EQ(c.reciprocity_denominator, "n-1");
}

TEST(ClassicalIndices, CompleteMutualDigraph)
{
	std::vector<EdgeRecord> arcs;
	for (Vertex u = 0; u < 4; ++u)
		for (Vertex v = 0; v < 4; ++v)
			if (u != v)
				arcs.push_back({u, v, 1.0});
	const auto c = classical_indices(build_graph(4, arcs, true));
	expect_near(c.status, {1, 1, 1, 1});
	EXPECT_NEAR(c.cohesion, 1.0, exact);
	EXPECT_NEAR(c.density, 1.0, exact);
}

TEST(ClassicalIndices, NoChoicesGivesZeros)
{
	const auto c = classical_indices(build_graph(3, {}, true));
	expect_near(c.status, {0, 0, 0});
	expect_near(c.effusiveness, {0, 0, 0});
	expect_near(c.reciprocity, {0, 0, 0});
	EXPECT_EQ(c.density, 0.0);
	EXPECT_EQ(c.cohesion, 0.0);
	EXPECT_EQ(c.status_heterogeneity, 0.0);
}

TEST(ClassicalIndices, ParallelArcsCollapseUnlessWeighted)
{
	const auto g = build_graph(3, {{0, 1, 2.0}, {0, 1, 1.0}, {2, 1, 0.5}}, true);
	const auto plain = classical_indices(g);
	expect_near(plain.status, {0.0, 1.0, 0.0});
	const auto weighted = classical_indices(g, true);
	EXPECT_TRUE(weighted.weighted);
	expect_near(weighted.status, {0.0, 1.75, 0.0});
	expect_near(weighted.effusiveness, {1.5, 0.0, 0.25});
}

TEST(ClassicalIndices, UndirectedInputRejected)
{
	try {
		classical_indices(build_graph(2, {{0, 1, 1.0}}, false));
		FAIL() << "undirected input accepted";
	} catch (const Error& e) {
		EXPECT_EQ(e.code(), ErrorCode::UndirectedInput);
	}
}

TEST(IndexReport, ClassicalOnlyForDigraphs)
{
	const auto und = build_graph(2, {{0, 1, 1.0}}, false);
	const auto r1 = index_report(und, forest_accessibility(und));
	EXPECT_TRUE(r1.derivative.has_value());
	EXPECT_FALSE(r1.classical.has_value());
	const auto dir = small_choices();
	const auto r2 = index_report(dir, forest_accessibility(dir));
	EXPECT_TRUE(r2.classical.has_value());
}

TEST(SocioIndicesProperties, SolitarinessIdentities)
{
	testing::Rng rng(601);
	for (int trial = 0; trial < 300; ++trial) {
		const auto g = testing::random_dense_graph(rng, testing::pick(rng, 1, 9), 0.4, 0.1, 2.0, trial % 3 == 0);
		const auto acc = forest_accessibility(g);
		const auto idx = derivative_indices(acc);
		double trace = 0.0;
		for (std::size_t i = 0; i < g.n(); ++i) {
			double off = 0.0;
			for (std::size_t j = 0; j < g.n(); ++j)
				if (j != i)
					off += acc.q(i, j);
			ASSERT_NEAR(1.0 - off, idx.solitariness[i], exact);
			trace += acc.q(i, i);
		}
		ASSERT_NEAR(idx.dissociation, trace / static_cast<double>(g.n()), exact);
		ASSERT_GT(idx.dissociation, 0.0);
		ASSERT_LE(idx.dissociation, 1.0 + exact);
		ASSERT_GE(idx.heterogeneity, 0.0);
		const double diff_sum = std::accumulate(idx.provinciality_diff.begin(), idx.provinciality_diff.end(), 0.0);
		ASSERT_NEAR(diff_sum, 0.0, exact);
	}
}

TEST(SocioIndicesProperties, ClassicalIndicesAreRelabelingEquivariant)
{
	testing::Rng rng(602);
	for (int trial = 0; trial < 200; ++trial) {
		const auto g = testing::random_graph(rng, {2, 8, 20, 0.0, 2.0, true});
		std::vector<Vertex> perm(g.n());
		std::iota(perm.begin(), perm.end(), Vertex{0});
		std::shuffle(perm.begin(), perm.end(), rng);
		for (bool weighted : {false, true}) {
			const auto a = classical_indices(g, weighted);
			const auto b = classical_indices(permuted(g, perm), weighted);
			for (std::size_t i = 0; i < g.n(); ++i) {
				ASSERT_NEAR(b.status[perm[i]], a.status[i], exact);
				ASSERT_NEAR(b.effusiveness[perm[i]], a.effusiveness[i], exact);
				ASSERT_NEAR(b.reciprocity[perm[i]], a.reciprocity[i], exact);
			}
			ASSERT_NEAR(a.density, b.density, exact);
			ASSERT_NEAR(a.cohesion, b.cohesion, exact);
			ASSERT_NEAR(a.status_heterogeneity, b.status_heterogeneity, exact);
		}
	}
}

TEST(SocioIndicesProperties, DensityEqualsMeanEffusiveness)
{
	// Every choice is made by one member and received by another.
	testing::Rng rng(603);
	for (int trial = 0; trial < 200; ++trial) {
		const auto g = testing::random_graph(rng, {2, 8, 20, 0.0, 2.0, true});
		const auto c = classical_indices(g);
		const double mean_eff =
		  std::accumulate(c.effusiveness.begin(), c.effusiveness.end(), 0.0) / static_cast<double>(g.n());
		ASSERT_NEAR(c.density, mean_eff, exact);
		for (std::size_t i = 0; i < g.n(); ++i) {
			ASSERT_LE(c.reciprocity[i], std::min(c.status[i], c.effusiveness[i]) + exact);
			ASSERT_LE(c.status[i], 1.0 + exact);
		}
	}
}

} // namespace
} // namespace forestacc
