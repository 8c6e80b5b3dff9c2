#pragma once

// Output documents for the CLI. Every command builds a Report and renders it
// as CSV or JSON; the same builders are what tests compare against.

#include "forestacc/forest_matrix.hpp"
#include "forestacc/graph.hpp"
#include "forestacc/io.hpp"
#include "forestacc/matrix.hpp"
#include "forestacc/perturbation.hpp"
#include "forestacc/rwd_series.hpp"
#include "forestacc/socio_indices.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace forestacc {

enum class OutputFormat { Csv, Json };

struct OutputOptions
{
	OutputFormat format = OutputFormat::Csv;
	/// Significant digits; 17 reproduces every double exactly.
	int digits = 17;
};

using ReportValue = std::variant<double, std::int64_t, bool, std::string>;

struct ReportSection
{
	enum class Kind { Scalars, Vector, Matrix };

	std::string name;
	Kind kind = Kind::Scalars;
	std::vector<std::pair<std::string, ReportValue>> scalars;
	std::vector<std::string> labels;
	std::vector<double> values;
	Matrix matrix;
};

struct Report
{
	std::string command;
	std::vector<ReportSection> sections;

	Report& scalars(std::string name, std::vector<std::pair<std::string, ReportValue>> entries)
	{
		ReportSection s;
		s.name = std::move(name);
		s.scalars = std::move(entries);
		sections.push_back(std::move(s));
		return *this;
	}

	Report& vector(std::string name, std::vector<std::string> labels, std::vector<double> values)
	{
		ReportSection s;
		s.name = std::move(name);
		s.kind = ReportSection::Kind::Vector;
		s.labels = std::move(labels);
		s.values = std::move(values);
		sections.push_back(std::move(s));
		return *this;
	}

	Report& matrix(std::string name, std::vector<std::string> labels, Matrix m)
	{
		ReportSection s;
		s.name = std::move(name);
		s.kind = ReportSection::Kind::Matrix;
		s.labels = std::move(labels);
		s.matrix = std::move(m);
		sections.push_back(std::move(s));
		return *this;
	}
};

inline std::vector<std::string> vertex_labels(const WeightedMultigraph& g)
{
	std::vector<std::string> out;
	for (Vertex v = 0; v < g.n(); ++v)
		out.push_back(g.label(v));
	return out;
}

namespace detail {

inline std::string csv_field(const std::string& s)
{
	if (s.find_first_of(",\"\n") == std::string::npos)
		return s;
	std::string out = "\"";
	for (char c : s) {
		if (c == '"')
			out += '"';
		out += c;
	}
	return out + "\"";
}

inline std::string render_value(const ReportValue& v, int digits)
{
	return std::visit(
	  [digits](const auto& x) -> std::string {
		  using T = std::decay_t<decltype(x)>;
		  if constexpr (std::is_same_v<T, double>)
			  return format_double(x, digits);
		  else if constexpr (std::is_same_v<T, bool>)
			  return x ? "true" : "false";
		  else if constexpr (std::is_same_v<T, std::int64_t>)
			  return std::to_string(x);
		  else
			  return csv_field(x);
	  },
	  v);
}

inline double rounded(double x, int digits)
{
	if (digits >= 17 || !std::isfinite(x))
		return x;
	return std::stod(format_double(x, digits));
}

} // namespace detail

/// One "# name" block per section; vectors and matrices carry a label header row.
inline std::string render_csv(const Report& r, int digits = 17)
{
	std::string out;
	for (const auto& s : r.sections) {
		out += "# " + s.name + "\n";
		switch (s.kind) {
		case ReportSection::Kind::Scalars:
			for (const auto& [k, v] : s.scalars)
				out += detail::csv_field(k) + "," + detail::render_value(v, digits) + "\n";
			break;
		case ReportSection::Kind::Vector:
			out += "vertex,value\n";
			for (std::size_t i = 0; i < s.values.size(); ++i)
				out += detail::csv_field(s.labels.at(i)) + "," + format_double(s.values[i], digits) + "\n";
			break;
		case ReportSection::Kind::Matrix:
			out += "vertex";
			for (const auto& l : s.labels)
				out += "," + detail::csv_field(l);
			out += "\n";
			for (std::size_t i = 0; i < s.matrix.rows(); ++i) {
				out += detail::csv_field(s.labels.at(i));
				for (double x : s.matrix.row(i))
					out += "," + format_double(x, digits);
				out += "\n";
			}
			break;
		}
	}
	return out;
}

inline std::string render_json(const Report& r, int digits = 17)
{
	using nlohmann::ordered_json;
	ordered_json j;
	j["command"] = r.command;
	for (const auto& s : r.sections) {
		ordered_json body;
		switch (s.kind) {
		case ReportSection::Kind::Scalars:
			body = ordered_json::object();
			for (const auto& [k, v] : s.scalars)
				std::visit(
				  [&](const auto& x) {
					  using T = std::decay_t<decltype(x)>;
					  if constexpr (std::is_same_v<T, double>)
						  body[k] = detail::rounded(x, digits);
					  else
						  body[k] = x;
				  },
				  v);
			break;
		case ReportSection::Kind::Vector: {
			body["labels"] = s.labels;
			auto& vals = body["values"] = ordered_json::array();
			for (double x : s.values)
				vals.push_back(detail::rounded(x, digits));
			break;
		}
		case ReportSection::Kind::Matrix: {
			body["labels"] = s.labels;
			auto& rows = body["rows"] = ordered_json::array();
			for (std::size_t i = 0; i < s.matrix.rows(); ++i) {
				ordered_json row = ordered_json::array();
				for (double x : s.matrix.row(i))
					row.push_back(detail::rounded(x, digits));
				rows.push_back(std::move(row));
			}
			break;
		}
		}
		j[s.name] = std::move(body);
	}
	return j.dump(2) + "\n";
}

inline std::string render(const Report& r, const OutputOptions& opts)
{
	return opts.format == OutputFormat::Json ? render_json(r, opts.digits) : render_csv(r, opts.digits);
}

/// Q, det(I + aL), and for undirected graphs d and the block certificate.
inline Report compute_report(const WeightedMultigraph& g, const AccessibilityResult& acc,
                             const Tolerances& tol = {})
{
	Report r;
	r.command = "compute";
	const auto labels = vertex_labels(g);
	const auto blocks = components(g);
	std::vector<std::pair<std::string, ReportValue>> summary{
	  {"n", static_cast<std::int64_t>(g.n())},
	  {"directed", g.directed()},
	  {"alpha", acc.alpha},
	  {"det_w", acc.det_w},
	  {"components", static_cast<std::int64_t>(blocks.size())},
	};
	if (!g.directed())
		summary.emplace_back("block_certificate", block_structure(acc, blocks, tol.structural_zero));
	r.scalars("summary", std::move(summary));
	r.matrix("Q", labels, acc.q);
	if (!g.directed())
		r.matrix("d", labels, forest_distance(acc).d);
	return r;
}

inline Report indices_report(const WeightedMultigraph& g, const IndexReport& idx)
{
	Report r;
	r.command = "indices";
	const auto labels = vertex_labels(g);
	if (idx.derivative) {
		const auto& d = *idx.derivative;
		r.scalars("derivative", {{"alpha", d.alpha},
		                         {"dissociation", d.dissociation},
		                         {"heterogeneity", d.heterogeneity},
		                         {"from_directed", d.from_directed}});
		r.vector("solitariness", labels, d.solitariness);
		r.vector("provinciality_ratio", labels, d.provinciality_ratio);
		r.vector("provinciality_diff", labels, d.provinciality_diff);
	}
	if (idx.classical) {
		const auto& c = *idx.classical;
		r.scalars("classical", {{"density", c.density},
		                        {"cohesion", c.cohesion},
		                        {"status_heterogeneity", c.status_heterogeneity},
		                        {"normalization", c.normalization},
		                        {"weighted", c.weighted},
		                        {"reciprocity_denominator", c.reciprocity_denominator}});
		r.vector("status", labels, c.status);
		r.vector("effusiveness", labels, c.effusiveness);
		r.vector("reciprocity", labels, c.reciprocity);
	}
	return r;
}

inline Matrix sign_matrix(const BasicMatrix<int>& s)
{
	Matrix m(s.rows(), s.cols());
	for (std::size_t i = 0; i < s.rows(); ++i)
		for (std::size_t j = 0; j < s.cols(); ++j)
			m(i, j) = s(i, j);
	return m;
}

/// Runs a chain of increments and reports the state before, each rank-one
/// step, and the state after.
inline Report update_report(const WeightedMultigraph& g, const std::vector<EdgeIncrement>& increments,
                            double alpha = 1.0, std::size_t refresh_interval = 32, const Tolerances& tol = {})
{
	Report r;
	r.command = "update";
	const auto labels = vertex_labels(g);
	UpdateChain chain(g, alpha, refresh_interval, tol);
	r.matrix("before.Q", labels, chain.accessibility().q);
	r.matrix("before.d", labels, chain.distance().d);

	for (std::size_t s = 0; s < increments.size(); ++s) {
		const auto rep = chain.apply(increments[s]);
		const std::string p = "step" + std::to_string(s + 1);
		r.scalars(p, {{"k", g.label(rep.increment.k)},
		              {"t", g.label(rep.increment.t)},
		              {"delta", rep.increment.delta},
		              {"h", rep.h},
		              {"rank_one", rank_one_certificate(rep)}});
		r.vector(p + ".left", labels, rep.left);
		r.vector(p + ".right", labels, rep.right);
		r.matrix(p + ".delta_q", labels, rep.delta_q);
		r.matrix(p + ".signs", labels, sign_matrix(rep.signs));
		r.matrix(p + ".delta_d", labels, rep.delta_d);
	}

	r.scalars("after", {{"det_w", chain.accessibility().det_w},
	                    {"refreshes", static_cast<std::int64_t>(chain.refreshes())},
	                    {"updates_since_solve", static_cast<std::int64_t>(chain.accessibility().updates_since_solve)}});
	r.matrix("after.Q", labels, chain.accessibility().q);
	r.matrix("after.d", labels, chain.distance().d);
	return r;
}

inline Report series_report(const WeightedMultigraph& g, std::size_t terms, double alpha = 1.0,
                            const Tolerances& tol = {})
{
	Report r;
	r.command = "series";
	const auto labels = vertex_labels(g);
	const auto bound = weight_bound(g);
	const auto l = kirchhoff(g);
	const auto series = series_partial_sum(l, terms, alpha);
	const auto acc = forest_accessibility(l, alpha, tol);

	r.scalars("bound", {{"bounded", bound.bounded},
	                    {"value", bound.value},
	                    {"max_multiplicity", static_cast<std::int64_t>(bound.max_multiplicity)},
	                    {"satisfied", bound.satisfied}});
	r.scalars("series", {{"terms", static_cast<std::int64_t>(terms)},
	                     {"alpha", alpha},
	                     {"gershgorin_radius", series.gershgorin_radius},
	                     {"gershgorin_safe", series.gershgorin_safe()},
	                     {"terms_nondecreasing", series.terms_nondecreasing()},
	                     {"error_vs_solve", norm_inf(series.sum - acc.q)}});
	r.matrix("partial_sum", labels, series.sum);
	std::vector<std::string> steps;
	for (std::size_t t = 0; t < series.term_norms.size(); ++t)
		steps.push_back(std::to_string(t));
	r.vector("term_norms", std::move(steps), series.term_norms);
	return r;
}

} // namespace forestacc
