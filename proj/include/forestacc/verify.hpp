#pragma once

// Oracle suite for one input graph: every numerical route against brute-force
// enumeration.

#include "forestacc/forest_enum.hpp"
#include "forestacc/forest_matrix.hpp"
#include "forestacc/graph.hpp"
#include "forestacc/report.hpp"
#include "forestacc/rwd_series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace forestacc {

struct VerificationCheck
{
	std::string name;
	bool passed = true;
	bool skipped = false;
	double max_error = 0.0;
	std::string detail;
};

inline VerificationCheck named_check(std::string name)
{
	VerificationCheck c;
	c.name = std::move(name);
	return c;
}

struct VerificationReport
{
	std::vector<VerificationCheck> checks;

	bool passed() const
	{
		return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
	}
};

struct VerificationOptions
{
	double alpha = 1.0;
	Tolerances tol;
	EnumerationLimits limits;
	/// Route-with-drains identity is checked up to this length on graphs within `rwd_limits`.
	std::size_t rwd_length = 3;
	RwdLimits rwd_limits{};
};

/// Throws SizeGuardExceeded when the graph is too large to enumerate.
inline VerificationReport run_verification(const WeightedMultigraph& g, const VerificationOptions& opt = {})
{
	VerificationReport rep;
	const auto& tol = opt.tol;
	auto add = [&](VerificationCheck c) { rep.checks.push_back(std::move(c)); };

	// Enumeration on the alpha-scaled graph, which is what I + alpha L counts.
	const auto scaled_graph = scaled(g, opt.alpha);
	const auto forests = enumerate_forests(scaled_graph, opt.limits);
	const auto oracle = oracle_Q(scaled_graph, opt.limits);
	const auto acc = forest_accessibility(kirchhoff(g), opt.alpha, tol);

	{
		auto c = named_check("forest_matrix_vs_enumeration");
		c.max_error = max_abs_diff(acc.q, oracle);
		c.passed = c.max_error <= tol.stochastic;
		add(c);
	}
	{
		auto c = named_check("det_vs_forest_weight");
		const double total = weight_of_set(forests);
		c.max_error = std::abs(acc.det_w - total);
		c.passed = c.max_error <= tol.stochastic * std::max(1.0, total);
		add(c);
	}
	{
		auto c = named_check("matrix_tree_cofactors");
		const auto cert = tree_cofactor_check(g, opt.limits);
		c.max_error = cert.max_error;
		c.passed = cert.passed;
		add(c);
	}
	{
		auto c = named_check("accessibility_invariants");
		const auto v = invariant_violations(acc, tol);
		c.passed = v.empty();
		if (!v.empty())
			c.detail = v.front();
		add(c);
	}
	if (!g.directed()) {
		const auto dist = forest_distance(acc);
		{
			auto c = named_check("metric_axioms");
			const auto v = metric_violations(dist, tol.stochastic);
			c.passed = v.empty();
			if (!v.empty())
				c.detail = v.front();
			add(c);
		}
		{
			auto c = named_check("block_structure");
			c.passed = block_structure(acc, components(g), tol.structural_zero);
			add(c);
		}
		{
			auto c = named_check("digraph_doubling");
			if (2 * g.edge_count() > opt.limits.max_records) {
				c.skipped = true;
				c.detail = "doubled arc set exceeds the record guard";
			} else {
				c.max_error = max_abs_diff(oracle_Q(as_digraph(scaled_graph), opt.limits), oracle);
				c.passed = c.max_error <= tol.stochastic;
			}
			add(c);
		}
	}
	{
		auto c = named_check("routes_with_drains");
		if (g.n() > opt.rwd_limits.max_vertices) {
			c.skipped = true;
			c.detail = "graph exceeds the route enumeration guard";
		} else {
			const auto l = kirchhoff(g);
			Matrix m(g.n(), g.n());
			for (std::size_t i = 0; i < g.n(); ++i)
				for (std::size_t j = 0; j < g.n(); ++j)
					m(i, j) = -l(i, j);
			Matrix power = Matrix::identity(g.n());
			for (std::size_t t = 0; t <= opt.rwd_length; ++t) {
				if (t > 0)
					power = power * m;
				const double scale = std::max(1.0, norm_inf(power));
				for (Vertex i = 0; i < g.n(); ++i)
					for (Vertex j = 0; j < g.n(); ++j) {
						const auto count = enumerate_rwd(g, i, j, t, opt.rwd_limits);
						const double err = std::abs(count.signed_weight() - power(i, j));
						c.max_error = std::max(c.max_error, err);
						if (err > 1e-12 * scale)
							c.passed = false;
					}
			}
		}
		add(c);
	}
	return rep;
}

inline Report verification_report(const VerificationReport& v)
{
	Report r;
	r.command = "verify";
	std::vector<std::pair<std::string, ReportValue>> entries{{"passed", v.passed()}};
	for (const auto& c : v.checks) {
		entries.emplace_back(c.name, std::string(c.skipped ? "skipped" : c.passed ? "pass" : "FAIL"));
		entries.emplace_back(c.name + ".max_error", c.max_error);
		if (!c.detail.empty())
			entries.emplace_back(c.name + ".detail", c.detail);
	}
	r.scalars("checks", std::move(entries));
	return r;
}

} // namespace forestacc
