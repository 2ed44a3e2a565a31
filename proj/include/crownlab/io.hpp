#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "crownlab/crown.hpp"
#include "crownlab/lie.hpp"

namespace crownlab
{

using json = nlohmann::ordered_json;

inline constexpr const char* schema_version = "1.0";

/// Subset of TOML: [section] headers, key = value, # comments. Values are kept as raw
/// strings with surrounding quotes removed. Keys before any header land in section "".
using TomlDoc = std::map<std::string, std::map<std::string, std::string>>;

TomlDoc parse_toml(const std::string& text);

struct Tolerances
{
    double algebraic = 1e-12;
    double eigen = 1e-9;
    double quadrature = 1e-10;
    double kms = 1e-6;
    double deficit = 0.05;
};

struct SampleCounts
{
    long classify = 10000;
    long domains = 100000;
    long cr2 = 10000;
    int cr2_grid = 101;
    int hardy_points = 100;
    int cauchy_vectors = 20;
    long schober = 10000;
    int hardy_pairs = 20;
    int regnet = 64;
};

struct RunConfig
{
    std::uint64_t seed = 42;
    Tolerances tol;
    SampleCounts samples;
    std::string out_dir = ".";
};

/// Reads [run] seed/out_dir, [tolerances] and [samples]; unknown keys are ConfigInvalid.
RunConfig load_config(const std::string& path);
RunConfig config_from_toml(const TomlDoc& doc);
/// CROWNLAB_SEED, when set, replaces the seed.
void apply_env(RunConfig& cfg);
void validate(const RunConfig& cfg);

/// "re+imi", "re-imi", "re", "imi", "i", "-i".
cplx parse_complex(const std::string& s);
json to_json(cplx z);
std::vector<double> parse_list(const std::string& s);

/// Write to path.tmp then rename over path. IoError on failure.
void write_atomic(const std::string& path, const std::string& content);

/// {"dim": n, "names": [...], "c": [[[...]]]} with c[i][j][k] the e_k coefficient of [e_i, e_j].
LieAlgebra<double> load_algebra_json(const std::string& path);
LieAlgebra<double> algebra_from_json(const json& j);
json algebra_to_json(const LieAlgebra<double>& g);

json matrix_to_json(const Eigen::MatrixXd& m);
json matrix_to_json(const Eigen::MatrixXcd& m);

}  // namespace crownlab
