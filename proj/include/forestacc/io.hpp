#pragma once

#include "forestacc/error.hpp"
#include "forestacc/graph.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <unordered_map>
#include <utility>
#include <vector>

namespace forestacc {

/// One input record; `multiplicity` > 1 expands into parallel edges.
struct DocumentRecord
{
	Vertex u = 0;
	Vertex v = 0;
	double weight = 1.0;
	std::size_t multiplicity = 1;

	friend bool operator==(const DocumentRecord&, const DocumentRecord&) = default;
};

/// Parsed graph file. Endpoints are resolved to indices; when `labels` is
/// non-empty it names every vertex and serialization writes endpoints by label.
struct GraphDocument
{
	int version = 1;
	bool directed = false;
	std::size_t n = 0;
	std::vector<std::string> labels;
	std::vector<DocumentRecord> records;

	friend bool operator==(const GraphDocument&, const GraphDocument&) = default;
};

inline WeightedMultigraph to_graph(const GraphDocument& doc)
{
	std::vector<EdgeRecord> edges;
	for (const auto& r : doc.records)
		for (std::size_t c = 0; c < r.multiplicity; ++c)
			edges.push_back({r.u, r.v, r.weight});
	return WeightedMultigraph(doc.n, std::move(edges), doc.directed ? Orientation::Directed : Orientation::Undirected,
	                          doc.labels);
}

inline GraphDocument to_document(const WeightedMultigraph& g)
{
	GraphDocument doc;
	doc.directed = g.directed();
	doc.n = g.n();
	doc.labels = g.labels();
	for (const auto& e : g.edges())
		doc.records.push_back({e.u, e.v, e.weight, 1});
	return doc;
}

/// "%.17g" by default, which reads back to the same double. Negative zero prints as 0.
inline std::string format_double(double x, int digits = 17)
{
	if (x == 0.0)
		return "0";
	char buf[64];
	std::snprintf(buf, sizeof buf, "%.*g", digits, x);
	return buf;
}

namespace detail {

struct Token
{
	std::string_view text;
	std::size_t column;
};

inline std::vector<Token> tokenize(std::string_view line)
{
	std::vector<Token> out;
	std::size_t i = 0;
	while (i < line.size()) {
		while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
			++i;
		if (i >= line.size() || line[i] == '#')
			break;
		const std::size_t start = i;
		while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#')
			++i;
		out.push_back({line.substr(start, i - start), start + 1});
	}
	return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view s)
{
	T value{};
	const auto* first = s.data();
	const auto* last = s.data() + s.size();
	if (first != last && *first == '+')
		++first;
	const auto [ptr, ec] = std::from_chars(first, last, value);
	if (ec != std::errc{} || ptr != last)
		return std::nullopt;
	return value;
}

inline void check_label_text(const std::string& label)
{
	if (label.empty() || label == "labels:" || label.find_first_of(" \t\r\n#") != std::string::npos)
		throw Error(ErrorCode::InvalidArgument, "label '" + label + "' cannot be written to an edge list");
}

} // namespace detail

/**
 * Plain edge-list format:
 *
 *     # comment
 *     n=3 directed=0
 *     labels: alice bob carol      (optional)
 *     alice bob 1.0
 *     1 2 0.5 2                    (optional 4th column: multiplicity)
 *
 * Endpoints are labels from the table or integer indices. Repeated pairs
 * are parallel edges.
 */
inline GraphDocument parse_edge_list(std::string_view text)
{
	GraphDocument doc;
	bool have_header = false;
	std::unordered_map<std::string, Vertex> by_label;

	std::size_t line_no = 0;
	std::size_t pos = 0;
	while (pos <= text.size()) {
		const std::size_t eol = std::min(text.find('\n', pos), text.size());
		const std::string_view line = text.substr(pos, eol - pos);
		pos = eol + 1;
		++line_no;
		const auto tokens = detail::tokenize(line);
		if (tokens.empty())
			continue;

		if (!have_header) {
			bool saw_n = false;
			bool saw_directed = false;
			for (const auto& tok : tokens) {
				const auto eq = tok.text.find('=');
				if (eq == std::string_view::npos)
					throw ParseError(line_no, tok.column, "expected header 'n=<count> directed=<0|1>'");
				const auto key = tok.text.substr(0, eq);
				const auto value = tok.text.substr(eq + 1);
				const std::size_t vcol = tok.column + eq + 1;
				if (key == "n") {
					const auto n = detail::parse_number<std::size_t>(value);
					if (!n || *n == 0)
						throw ParseError(line_no, vcol, "vertex count must be a positive integer");
					doc.n = *n;
					saw_n = true;
				} else if (key == "directed") {
					if (value != "0" && value != "1")
						throw ParseError(line_no, vcol, "directed must be 0 or 1");
					doc.directed = value == "1";
					saw_directed = true;
				} else if (key == "version") {
					const auto v = detail::parse_number<int>(value);
					if (!v || *v != 1)
						throw ParseError(line_no, vcol, "unsupported format version");
					doc.version = *v;
				} else {
					throw ParseError(line_no, tok.column, "unknown header key '" + std::string(key) + "'");
				}
			}
			if (!saw_n || !saw_directed)
				throw ParseError(line_no, 1, "header needs both n= and directed=");
			have_header = true;
			continue;
		}

		if (tokens.front().text == "labels:") {
			if (!doc.labels.empty() || !doc.records.empty())
				throw ParseError(line_no, 1, "label table must precede all records and appear once");
			if (tokens.size() - 1 != doc.n)
				throw ParseError(line_no, 1,
				                 "label table has " + std::to_string(tokens.size() - 1) + " entries for n=" +
				                   std::to_string(doc.n));
			for (std::size_t k = 1; k < tokens.size(); ++k) {
				std::string label(tokens[k].text);
				if (!by_label.emplace(label, k - 1).second)
					throw ParseError(line_no, tokens[k].column, "duplicate label '" + label + "'");
				doc.labels.push_back(std::move(label));
			}
			continue;
		}

		if (tokens.size() != 3 && tokens.size() != 4)
			throw ParseError(line_no, tokens.front().column, "expected '<u> <v> <weight> [multiplicity]'");

		auto endpoint = [&](const detail::Token& tok) -> Vertex {
			if (!doc.labels.empty()) {
				if (auto it = by_label.find(std::string(tok.text)); it != by_label.end())
					return it->second;
			}
			const auto idx = detail::parse_number<std::size_t>(tok.text);
			if (!idx)
				throw ParseError(line_no, tok.column, "unknown label '" + std::string(tok.text) + "'",
				                 ErrorCode::UnknownLabel);
			if (*idx >= doc.n)
				throw ParseError(line_no, tok.column, "vertex " + std::string(tok.text) + " out of range",
				                 ErrorCode::OutOfRangeEndpoint);
			return *idx;
		};

		DocumentRecord rec;
		rec.u = endpoint(tokens[0]);
		rec.v = endpoint(tokens[1]);
		if (rec.u == rec.v)
			throw ParseError(line_no, tokens[0].column, "self-loop", ErrorCode::SelfLoop);
		const auto w = detail::parse_number<double>(tokens[2].text);
		if (!w || !std::isfinite(*w))
			throw ParseError(line_no, tokens[2].column, "malformed weight '" + std::string(tokens[2].text) + "'");
		if (!(*w > 0.0))
			throw ParseError(line_no, tokens[2].column, "non-positive weight " + std::string(tokens[2].text),
			                 ErrorCode::NonPositiveWeight);
		rec.weight = *w;
		if (tokens.size() == 4) {
			const auto mult = detail::parse_number<std::size_t>(tokens[3].text);
			if (!mult || *mult == 0)
				throw ParseError(line_no, tokens[3].column, "multiplicity must be a positive integer");
			rec.multiplicity = *mult;
		}
		doc.records.push_back(rec);
	}
	if (!have_header)
		throw ParseError(line_no, 1, "missing header 'n=<count> directed=<0|1>'");
	return doc;
}

inline std::string serialize_edge_list(const GraphDocument& doc)
{
	std::string out = "n=" + std::to_string(doc.n) + " directed=" + (doc.directed ? "1" : "0") + "\n";
	auto name = [&](Vertex v) { return doc.labels.empty() ? std::to_string(v) : doc.labels.at(v); };
	if (!doc.labels.empty()) {
		out += "labels:";
		for (const auto& l : doc.labels) {
			detail::check_label_text(l);
			out += ' ';
			out += l;
		}
		out += '\n';
	}
	for (const auto& r : doc.records) {
		out += name(r.u) + ' ' + name(r.v) + ' ' + format_double(r.weight);
		if (r.multiplicity != 1)
			out += ' ' + std::to_string(r.multiplicity);
		out += '\n';
	}
	return out;
}

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte)
{
	std::size_t line = 1;
	std::size_t col = 1;
	for (std::size_t k = 0; k < std::min(byte, text.size()); ++k) {
		if (text[k] == '\n') {
			++line;
			col = 1;
		} else {
			++col;
		}
	}
	return {line, col};
}

} // namespace detail

/**
 * Structured document:
 *
 *     {"version": 1, "directed": false, "n": 3, "labels": ["a", "b", "c"],
 *      "edges": [{"u": "a", "v": "b", "weight": 1.0, "multiplicity": 2}]}
 *
 * Without a label table, string endpoints are numbered in order of first
 * appearance and `n` may be omitted.
 */
inline GraphDocument parse_json_document(std::string_view text)
{
	using nlohmann::json;
	json j;
	try {
		j = json::parse(text);
	} catch (const json::parse_error& e) {
		const auto [line, col] = detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1);
		throw ParseError(line, col, e.what());
	}

	auto fail = [](const std::string& what, ErrorCode code = ErrorCode::ParseError) -> ParseError {
		return ParseError(1, 1, what, code);
	};

	try {
		if (!j.is_object())
			throw fail("document must be a JSON object");
		GraphDocument doc;
		doc.version = j.value("version", 1);
		if (doc.version != 1)
			throw fail("unsupported format version");
		doc.directed = j.value("directed", false);

		std::unordered_map<std::string, Vertex> by_label;
		const bool has_table = j.contains("labels");
		if (has_table) {
			for (const auto& l : j.at("labels")) {
				auto label = l.get<std::string>();
				if (!by_label.emplace(label, doc.labels.size()).second)
					throw fail("duplicate label '" + label + "'");
				doc.labels.push_back(std::move(label));
			}
		}
		const bool has_n = j.contains("n");
		if (has_n)
			doc.n = j.at("n").get<std::size_t>();
		if (has_table && has_n && doc.n != doc.labels.size())
			throw fail("label table size differs from n");
		if (has_table)
			doc.n = doc.labels.size();

		bool saw_index = false;
		bool saw_label = false;
		std::vector<std::string> discovered;
		auto endpoint = [&](const json& e) -> Vertex {
			const bool is_index = e.is_number_unsigned() || e.is_number_integer();
			(is_index ? saw_index : saw_label) = true;
			if (!has_table && saw_index && saw_label)
				throw fail("mixing index and label endpoints needs an explicit label table", ErrorCode::UnknownLabel);
			if (is_index) {
				const auto idx = e.get<long long>();
				if (idx < 0)
					throw fail("negative vertex index", ErrorCode::OutOfRangeEndpoint);
				return static_cast<Vertex>(idx);
			}
			const auto label = e.get<std::string>();
			if (auto it = by_label.find(label); it != by_label.end())
				return it->second;
			if (has_table)
				throw fail("unknown label '" + label + "'", ErrorCode::UnknownLabel);
			by_label.emplace(label, discovered.size());
			discovered.push_back(label);
			return discovered.size() - 1;
		};

		for (const auto& e : j.value("edges", json::array())) {
			DocumentRecord rec;
			rec.u = endpoint(e.at("u"));
			rec.v = endpoint(e.at("v"));
			rec.weight = e.at("weight").get<double>();
			rec.multiplicity = e.value("multiplicity", std::size_t{1});
			if (!(rec.weight > 0.0))
				throw fail("non-positive weight", ErrorCode::NonPositiveWeight);
			if (rec.multiplicity == 0)
				throw fail("multiplicity must be positive");
			if (rec.u == rec.v)
				throw fail("self-loop", ErrorCode::SelfLoop);
			doc.records.push_back(rec);
		}

		if (!has_table && saw_label) {
			if (has_n && discovered.size() > doc.n)
				throw fail("more labels than n", ErrorCode::UnknownLabel);
			doc.n = std::max(doc.n, discovered.size());
			for (std::size_t v = discovered.size(); v < doc.n; ++v) {
				auto filler = std::to_string(v);
				if (by_label.contains(filler))
					throw fail("cannot name unlabeled vertex " + filler);
				discovered.push_back(std::move(filler));
			}
			doc.labels = std::move(discovered);
		}
		if (doc.n == 0)
			throw fail("vertex count must be positive");
		for (const auto& r : doc.records)
			if (r.u >= doc.n || r.v >= doc.n)
				throw fail("vertex index out of range", ErrorCode::OutOfRangeEndpoint);
		return doc;
	} catch (const json::exception& e) {
		throw fail(e.what());
	}
}

inline std::string serialize_json_document(const GraphDocument& doc)
{
	using nlohmann::ordered_json;
	ordered_json j;
	j["version"] = doc.version;
	j["directed"] = doc.directed;
	j["n"] = doc.n;
	if (!doc.labels.empty())
		j["labels"] = doc.labels;
	ordered_json edges = ordered_json::array();
	for (const auto& r : doc.records) {
		ordered_json e;
		if (doc.labels.empty()) {
			e["u"] = r.u;
			e["v"] = r.v;
		} else {
			e["u"] = doc.labels.at(r.u);
			e["v"] = doc.labels.at(r.v);
		}
		e["weight"] = r.weight;
		if (r.multiplicity != 1)
			e["multiplicity"] = r.multiplicity;
		edges.push_back(std::move(e));
	}
	j["edges"] = std::move(edges);
	return j.dump(2) + "\n";
}

/// Picks the structured parser for text starting with '{', the edge list otherwise.
inline GraphDocument parse_document(std::string_view text)
{
	const auto first = text.find_first_not_of(" \t\r\n");
	if (first != std::string_view::npos && text[first] == '{')
		return parse_json_document(text);
	return parse_edge_list(text);
}

} // namespace forestacc
