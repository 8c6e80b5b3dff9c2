#include "forestacc/forest_matrix.hpp"
#include "forestacc/rwd_series.hpp"

#include "support/generators.hpp"
#include "support/properties.hpp"

#include <gtest/gtest.h>

namespace forestacc {
namespace {

constexpr double exact = 1e-12;

WeightedMultigraph edge(double w)
{
	return build_graph(2, {{0, 1, w}}, false);
}

TEST(WeightBound, Examples)
{
	EXPECT_DOUBLE_EQ(weight_bound(edge(0.1)).value, 0.5);
	EXPECT_DOUBLE_EQ(weight_bound(build_graph(3, {{0, 1, 0.1}, {1, 2, 0.1}}, false)).value, 0.25);
	const auto doubled = weight_bound(build_graph(3, {{0, 1, 0.1}, {1, 0, 0.1}, {1, 2, 0.1}}, false));
	EXPECT_EQ(doubled.max_multiplicity, 2u);
	EXPECT_DOUBLE_EQ(doubled.value, 0.125);
	EXPECT_TRUE(doubled.bounded);
	EXPECT_TRUE(doubled.satisfied);
}

TEST(WeightBound, ReportsViolationAndUnboundedCase)
{
	EXPECT_FALSE(weight_bound(edge(0.5)).satisfied);
	EXPECT_TRUE(weight_bound(edge(0.49)).satisfied);
	const auto lone = weight_bound(build_graph(1, {}, false));
	EXPECT_FALSE(lone.bounded);
	EXPECT_TRUE(std::isinf(lone.value));
}

TEST(SeriesPartialSum, Examples)
{
	const auto l = kirchhoff(edge(0.1));
	EXPECT_EQ(series_partial_sum(l, 0).sum, Matrix::identity(2));
	const Matrix one{{0.9, 0.1}, {0.1, 0.9}};
	EXPECT_LT(max_abs_diff(series_partial_sum(l, 1).sum, one), exact);
	const Matrix limit = Matrix{{11, 1}, {1, 11}} * (1.0 / 12.0);
	const auto long_sum = series_partial_sum(l, 200);
	EXPECT_LT(max_abs_diff(long_sum.sum, limit), exact);
	EXPECT_TRUE(long_sum.gershgorin_safe());
	EXPECT_FALSE(long_sum.terms_nondecreasing());
	EXPECT_EQ(long_sum.term_norms.size(), 201u);
}

TEST(SeriesPartialSum, DivergenceIsReportedNotRefused)
{
	const auto g = build_graph(3, {{0, 1, 10.0}, {1, 2, 10.0}, {0, 2, 10.0}}, false);
	const auto s = series_partial_sum(kirchhoff(g), 20);
	EXPECT_FALSE(weight_bound(g).satisfied);
	EXPECT_FALSE(s.gershgorin_safe());
	EXPECT_TRUE(s.terms_nondecreasing());
}

TEST(SeriesPartialSum, RejectsNonPositiveAlpha)
{
	EXPECT_THROW(series_partial_sum(kirchhoff(edge(0.1)), 3, 0.0), Error);
}

TEST(EnumerateRwd, Examples)
{
	const auto g = edge(0.1);
	const auto drain = enumerate_rwd(g, 0, 0, 1);
	EXPECT_EQ(drain.even_weight, 0.0);
	EXPECT_NEAR(drain.odd_weight, 0.1, exact);
	const auto step = enumerate_rwd(g, 0, 1, 1);
	EXPECT_NEAR(step.even_weight, 0.1, exact);
	EXPECT_EQ(step.odd_weight, 0.0);
	const auto stay = enumerate_rwd(g, 1, 1, 0);
	EXPECT_EQ(stay.even_weight, 1.0);
	EXPECT_EQ(stay.odd_weight, 0.0);
	EXPECT_EQ(enumerate_rwd(g, 0, 1, 0).signed_weight(), 0.0);
}

TEST(EnumerateRwd, LengthTwoOnAnEdge)
{
	// Routes 0 -> 0 of length 2: out and back (even), two drains (even),
	// and none with one drain that returns.
	const auto c = enumerate_rwd(edge(0.1), 0, 0, 2);
	EXPECT_NEAR(c.even_weight, 0.02, exact);
	EXPECT_EQ(c.odd_weight, 0.0);
}

TEST(EnumerateRwd, GuardsAndRanges)
{
	EXPECT_THROW(enumerate_rwd(build_graph(6, {}, false), 0, 0, 1), Error);
	EXPECT_THROW(enumerate_rwd(edge(0.1), 0, 0, 7), Error);
	EXPECT_THROW(enumerate_rwd(edge(0.1), 0, 2, 1), Error);
}

TEST(RwdSeriesProperties, RoutesMatchMatrixPowers)
{
	testing::Rng rng(501);
	testing::Outcome out;
	for (int trial = 0; trial < 80; ++trial) {
		const bool directed = trial % 2 == 1;
		const auto g = testing::random_graph(rng, {1, 4, 6, 0.0, 0.2, directed});
		testing::check_rwd(g, 5, out);
	}
	EXPECT_TRUE(out.ok()) << out.summary();
}

TEST(RwdSeriesProperties, SeriesConvergesUnderTheBound)
{
	// Half the bound keeps the contraction factor at most 1/2.
	testing::Rng rng(502);
	testing::Outcome out;
	for (int trial = 0; trial < 100; ++trial)
		testing::check_series(testing::random_bounded_graph(rng, 2, 5, 0.5), out);
	EXPECT_TRUE(out.ok()) << out.summary();
}

TEST(RwdSeriesProperties, GershgorinSafeUnderTheBound)
{
	testing::Rng rng(503);
	for (int trial = 0; trial < 200; ++trial) {
		const auto g = testing::random_bounded_graph(rng, 2, 6, 1.0, trial % 2 == 1);
		ASSERT_TRUE(weight_bound(g).satisfied) << testing::describe(g);
		ASSERT_TRUE(series_partial_sum(kirchhoff(g), 1).gershgorin_safe()) << testing::describe(g);
	}
}

TEST(RwdSeriesProperties, AlphaVariantConverges)
{
	testing::Rng rng(504);
	for (int trial = 0; trial < 100; ++trial) {
		const double alpha = testing::uniform(rng, 0.2, 5.0);
		const auto g = scaled(testing::random_bounded_graph(rng, 2, 5, 0.5), 1.0 / alpha);
		const auto s = series_partial_sum(kirchhoff(g), 60, alpha);
		const auto acc = forest_accessibility(g, alpha);
		ASSERT_LE(norm_inf(s.sum - acc.q), 1e-8) << testing::describe(g) << " alpha=" << alpha;
	}
}

TEST(RwdSeriesProperties, DirectedSeriesConvergesToo)
{
	testing::Rng rng(505);
	testing::Outcome out;
	for (int trial = 0; trial < 100; ++trial)
		testing::check_series(testing::random_bounded_graph(rng, 2, 5, 0.5, true), out);
	EXPECT_TRUE(out.ok()) << out.summary();
}

} // namespace
} // namespace forestacc
