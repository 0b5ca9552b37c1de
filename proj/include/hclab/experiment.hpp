#pragma once

#include "hclab/borel.hpp"
#include "hclab/hctest.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace hclab {

struct NamedSet {
    std::string id;
    BorelSet set;
};

struct UlQuery {
    long long n = 0;
    PAdicNumber center;
};

/// A validated, fully resolved experiment file.
struct ExperimentPlan {
    nlohmann::json source;
    std::string hash;
    std::string task;
    GroupContext group = CircleGroup{};
    std::optional<Element> a;
    std::optional<Weight> weight;
    int sign = -1;
    std::vector<NamedSet> sets;
    std::vector<long long> horizons;
    std::vector<long long> characters;
    std::size_t x_samples = 128;
    std::optional<FiniteElement> element;
    long long k_max = 64;
    VerdictConfig config;
    std::vector<UlQuery> ul_queries;
};

/// FNV-1a 64 of the canonical dump, as 16 hex digits.
std::string spec_hash(const nlohmann::json& spec);

/// Human-readable problems with the spec; empty iff it can run. `task`
/// overrides the file's own task when nonempty.
std::vector<std::string> validate(const nlohmann::json& spec, const std::string& task = "");

/// Throws ParseError listing every diagnostic.
ExperimentPlan make_plan(const nlohmann::json& spec, const std::string& task = "");

/// Runs the plan and writes its artifacts into out_dir; returns the files written.
std::vector<std::filesystem::path> run(const ExperimentPlan& plan, const std::filesystem::path& out_dir);

nlohmann::json to_json(const VerdictReport& r);

/// Writes through a temporary file and a rename.
void write_atomically(const std::filesystem::path& path, const std::string& content);

} // namespace hclab
