#pragma once

#include "forestacc/error.hpp"
#include "forestacc/forest_enum.hpp"
#include "forestacc/forest_matrix.hpp"
#include "forestacc/io.hpp"
#include "forestacc/perturbation.hpp"
#include "forestacc/report.hpp"
#include "forestacc/rwd_series.hpp"
#include "forestacc/socio_indices.hpp"
#include "forestacc/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace forestacc {

/// Settings shared by all subcommands. Defaults, then the optional config
/// file, then command-line flags.
struct RunConfig
{
	double alpha = 1.0;
	Tolerances tol;
	EnumerationLimits limits;
	OutputOptions output;
	std::size_t refresh_interval = 32;
	std::size_t series_terms = 60;

	void validate() const
	{
		if (!(alpha > 0.0))
			throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
		if (!(tol.stochastic > 0.0) || !(tol.structural_zero > 0.0) || !(tol.symmetry > 0.0) ||
		    !(tol.max_condition > 0.0))
			throw Error(ErrorCode::InvalidArgument, "tolerances must be positive");
		if (output.digits < 1 || output.digits > 17)
			throw Error(ErrorCode::InvalidArgument, "digits must be within 1..17");
		if (refresh_interval == 0)
			throw Error(ErrorCode::InvalidArgument, "refresh interval must be at least 1");
	}
};

/// Reads a JSON config, e.g. {"alpha": 0.5, "tolerances": {"stochastic": 1e-8},
/// "max_vertices": 8, "format": "json", "digits": 6}. Unknown keys are errors.
inline RunConfig load_config(std::string_view text, RunConfig base = {})
{
	using nlohmann::json;
	json j;
	try {
		j = json::parse(text);
		for (const auto& [key, value] : j.items()) {
			if (key == "alpha")
				base.alpha = value.get<double>();
			else if (key == "tolerances") {
				for (const auto& [tk, tv] : value.items()) {
					if (tk == "stochastic")
						base.tol.stochastic = tv.get<double>();
					else if (tk == "structural_zero")
						base.tol.structural_zero = tv.get<double>();
					else if (tk == "symmetry")
						base.tol.symmetry = tv.get<double>();
					else if (tk == "max_condition")
						base.tol.max_condition = tv.get<double>();
					else
						throw Error(ErrorCode::InvalidArgument, "unknown tolerance '" + tk + "'");
				}
			} else if (key == "max_vertices")
				base.limits.max_vertices = value.get<std::size_t>();
			else if (key == "max_records")
				base.limits.max_records = value.get<std::size_t>();
			else if (key == "format") {
				const auto f = value.get<std::string>();
				if (f != "csv" && f != "json")
					throw Error(ErrorCode::InvalidArgument, "format must be csv or json");
				base.output.format = f == "json" ? OutputFormat::Json : OutputFormat::Csv;
			} else if (key == "digits")
				base.output.digits = value.get<int>();
			else if (key == "refresh_interval")
				base.refresh_interval = value.get<std::size_t>();
			else if (key == "terms")
				base.series_terms = value.get<std::size_t>();
			else
				throw Error(ErrorCode::InvalidArgument, "unknown config key '" + key + "'");
		}
	} catch (const json::exception& e) {
		throw Error(ErrorCode::ParseError, std::string("config: ") + e.what());
	}
	base.validate();
	return base;
}

inline std::string read_file(const std::string& path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw Error(ErrorCode::InvalidArgument, "cannot read '" + path + "'");
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

namespace detail {

inline Vertex resolve_vertex(const WeightedMultigraph& g, const std::string& token)
{
	const auto& labels = g.labels();
	for (std::size_t v = 0; v < labels.size(); ++v)
		if (labels[v] == token)
			return v;
	const auto idx = parse_number<std::size_t>(token);
	if (!idx)
		throw Error(ErrorCode::UnknownLabel, "'" + token + "'");
	if (*idx >= g.n())
		throw Error(ErrorCode::OutOfRangeEndpoint, "vertex " + token);
	return *idx;
}

} // namespace detail

/**
 * Entry point of the `forestacc` tool. Exit status: 0 success, 1 validation
 * or usage error, 2 verification mismatch. Results go to `out`, diagnostics
 * to `err`.
 */
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err)
{
	CLI::App app{"Forest accessibility, forest distance and sociometric indices of weighted multigraphs",
	             "forestacc"};
	app.require_subcommand(1);

	std::string input;
	std::string config_path;
	std::optional<double> alpha;
	std::optional<std::string> format;
	std::optional<int> digits;
	std::optional<double> tol_stochastic;
	std::optional<double> tol_zero;
	std::optional<std::size_t> max_vertices;
	std::optional<std::size_t> max_records;

	auto common = [&](CLI::App* sub) {
		sub->add_option("-i,--input", input, "Graph file (edge list or JSON document)")->required();
		sub->add_option("--config", config_path, "JSON config file; flags override it");
		sub->add_option("-a,--alpha", alpha, "Scale parameter alpha > 0 (default 1)");
		sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
		sub->add_option("--digits", digits, "Significant digits in output (default 17)")->check(CLI::Range(1, 17));
		sub->add_option("--tol", tol_stochastic, "Tolerance for stochasticity and metric checks");
		sub->add_option("--zero-tol", tol_zero, "Threshold for structural zeros");
		sub->add_option("--max-vertices", max_vertices, "Enumeration guard on vertex count");
		sub->add_option("--max-records", max_records, "Enumeration guard on record count");
	};

	auto* compute = app.add_subcommand("compute", "Q, det(I + aL), forest distance, block certificate");
	common(compute);
	auto* indices = app.add_subcommand("indices", "Solitariness, dissociation, provinciality, classical indices");
	common(indices);
	bool weighted = false;
	indices->add_flag("--weighted", weighted, "Classical degrees sum arc weights instead of counting choices");
	auto* update = app.add_subcommand("update", "Rank-one updates for strengthened edges");
	common(update);
	std::vector<std::vector<std::string>> edge_args;
	update->add_option("--edge", edge_args, "Increment: K T DELTA (repeatable)")->expected(3)->required();
	std::optional<std::size_t> refresh;
	update->add_option("--refresh", refresh, "Re-solve after this many chained updates (default 32)");
	auto* series = app.add_subcommand("series", "Routes-with-drains series expansion and weight bound");
	common(series);
	std::optional<std::size_t> terms;
	series->add_option("-T,--terms", terms, "Highest power in the partial sum (default 60)");
	auto* verify = app.add_subcommand("verify", "Check every route against forest enumeration");
	common(verify);

	std::vector<std::string> argv_rev(args.rbegin(), args.rend());
	try {
		app.parse(argv_rev);
	} catch (const CLI::ParseError& e) {
		const int code = app.exit(e, out, err);
		return code == 0 ? 0 : 1;
	}

	try {
		RunConfig cfg;
		if (!config_path.empty())
			cfg = load_config(read_file(config_path));
		if (alpha)
			cfg.alpha = *alpha;
		if (format)
			cfg.output.format = *format == "json" ? OutputFormat::Json : OutputFormat::Csv;
		if (digits)
			cfg.output.digits = *digits;
		if (tol_stochastic)
			cfg.tol.stochastic = *tol_stochastic;
		if (tol_zero)
			cfg.tol.structural_zero = *tol_zero;
		if (max_vertices)
			cfg.limits.max_vertices = *max_vertices;
		if (max_records)
			cfg.limits.max_records = *max_records;
		if (refresh)
			cfg.refresh_interval = *refresh;
		if (terms)
			cfg.series_terms = *terms;
		cfg.validate();

		const auto graph = to_graph(parse_document(read_file(input)));

		if (compute->parsed()) {
			const auto acc = forest_accessibility(kirchhoff(graph), cfg.alpha, cfg.tol);
			out << render(compute_report(graph, acc, cfg.tol), cfg.output);
		} else if (indices->parsed()) {
			const auto acc = forest_accessibility(kirchhoff(graph), cfg.alpha, cfg.tol);
			out << render(indices_report(graph, index_report(graph, acc, weighted)), cfg.output);
		} else if (update->parsed()) {
			std::vector<EdgeIncrement> incs;
			for (const auto& e : edge_args) {
				const auto delta = detail::parse_number<double>(e.at(2));
				if (!delta)
					throw Error(ErrorCode::InvalidArgument, "malformed increment '" + e.at(2) + "'");
				incs.push_back({detail::resolve_vertex(graph, e.at(0)), detail::resolve_vertex(graph, e.at(1)), *delta});
			}
			out << render(update_report(graph, incs, cfg.alpha, cfg.refresh_interval, cfg.tol), cfg.output);
		} else if (series->parsed()) {
			out << render(series_report(graph, cfg.series_terms, cfg.alpha, cfg.tol), cfg.output);
		} else if (verify->parsed()) {
			VerificationOptions opt;
			opt.alpha = cfg.alpha;
			opt.tol = cfg.tol;
			opt.limits = cfg.limits;
			const auto result = run_verification(graph, opt);
			out << render(verification_report(result), cfg.output);
			if (!result.passed()) {
				for (const auto& c : result.checks)
					if (!c.passed)
						err << "verification mismatch: " << c.name << " (max error " << c.max_error << ")"
						    << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
				return 2;
			}
		}
	} catch (const Error& e) {
		err << "error: " << e.what() << "\n";
		return 1;
	}
	return 0;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
	std::vector<std::string> args;
	for (int k = 1; k < argc; ++k)
		args.emplace_back(argv[k]);
	return run_cli(std::move(args), out, err);
}

} // namespace forestacc
