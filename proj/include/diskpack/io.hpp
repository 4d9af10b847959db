#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "diskpack/bounds.hpp"
#include "diskpack/checker.hpp"
#include "diskpack/periodic.hpp"

namespace diskpack {

using Json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

/// Malformed or unreadable arrangement / cluster / result file.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Arrangement files: {"dim", "basis", "motif", "radius"}. Numbers are written
// as shortest round-trip decimals, so parse(serialize(A)) is bit-exact.
Json to_json(const PeriodicArrangement& a);
PeriodicArrangement arrangement_from_json(const Json& j);

// Cluster files: {"centers": [[x, y], ...]} with implied unit radius.
Json to_json(const Cluster& c);
Cluster cluster_from_json(const Json& j);

/// True when the document looks like a cluster file rather than an arrangement.
bool is_cluster_document(const Json& j);

Json to_json(const Point& p);
Json to_json(const AreaBracket& b);
Json to_json(const CoverVerdict& v);
Json to_json(const HoleBracket& h);
Json to_json(const PackingVerdict& v);
Json to_json(const ReplacementWitness& w);
ReplacementWitness witness_from_json(const Json& j);
Json to_json(const Verdict& v);
Json to_json(const BoundReport& r);

struct ResultRecord {
    std::string command;
    Json inputs = Json::object();
    Json result;
    std::string tool_version = kToolVersion;
    std::optional<std::uint64_t> seed;
};
Json to_json(const ResultRecord& r);

std::string serialize(const Json& j);
Json parse_json_text(const std::string& text);
Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace diskpack
