#include "crownlab/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace crownlab
{

namespace
{

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Drops a trailing # comment that is not inside quotes.
std::string strip_comment(const std::string& s)
{
    bool quoted = false;
    for (size_t i = 0; i < s.size(); ++i)
    {
        if (s[i] == '"') quoted = !quoted;
        if (s[i] == '#' && !quoted) return s.substr(0, i);
    }
    return s;
}

double to_double(const std::string& key, const std::string& v)
{
    try
    {
        size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    }
    catch (const std::exception&)
    {
        throw Error("ConfigInvalid", key + " is not a number: " + v);
    }
}

long to_long(const std::string& key, const std::string& v)
{
    const double d = to_double(key, v);
    if (d != std::floor(d)) throw Error("ConfigInvalid", key + " is not an integer: " + v);
    return static_cast<long>(d);
}

}  // namespace

TomlDoc parse_toml(const std::string& text)
{
    TomlDoc doc;
    std::string section;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        const std::string s = trim(strip_comment(line));
        if (s.empty()) continue;
        if (s.front() == '[')
        {
            if (s.back() != ']' || s.size() < 3)
                throw Error("ConfigInvalid", "bad section header on line " + std::to_string(lineno));
            section = trim(s.substr(1, s.size() - 2));
            doc[section];
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw Error("ConfigInvalid", "expected key = value on line " + std::to_string(lineno));
        const std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (key.empty()) throw Error("ConfigInvalid", "empty key on line " + std::to_string(lineno));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        if (doc[section].count(key)) throw Error("ConfigInvalid", "duplicate key " + key);
        doc[section][key] = value;
    }
    return doc;
}

RunConfig config_from_toml(const TomlDoc& doc)
{
    RunConfig cfg;
    for (const auto& [section, kv] : doc)
    {
        for (const auto& [key, v] : kv)
        {
            const std::string name = section.empty() ? key : section + "." + key;
            if (section == "run" || section.empty())
            {
                if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_long(name, v));
                else if (key == "out_dir") cfg.out_dir = v;
                else throw Error("ConfigInvalid", "unknown key " + name);
            }
            else if (section == "tolerances")
            {
                double* t = key == "algebraic"    ? &cfg.tol.algebraic
                            : key == "eigen"      ? &cfg.tol.eigen
                            : key == "quadrature" ? &cfg.tol.quadrature
                            : key == "kms"        ? &cfg.tol.kms
                            : key == "deficit"    ? &cfg.tol.deficit
                                                  : nullptr;
                if (!t) throw Error("ConfigInvalid", "unknown key " + name);
                *t = to_double(name, v);
            }
            else if (section == "samples")
            {
                auto& s = cfg.samples;
                if (key == "classify") s.classify = to_long(name, v);
                else if (key == "domains") s.domains = to_long(name, v);
                else if (key == "cr2") s.cr2 = to_long(name, v);
                else if (key == "cr2_grid") s.cr2_grid = static_cast<int>(to_long(name, v));
                else if (key == "hardy_points") s.hardy_points = static_cast<int>(to_long(name, v));
                else if (key == "cauchy_vectors") s.cauchy_vectors = static_cast<int>(to_long(name, v));
                else if (key == "schober") s.schober = to_long(name, v);
                else if (key == "hardy_pairs") s.hardy_pairs = static_cast<int>(to_long(name, v));
                else if (key == "regnet") s.regnet = static_cast<int>(to_long(name, v));
                else throw Error("ConfigInvalid", "unknown key " + name);
            }
            else
            {
                throw Error("ConfigInvalid", "unknown section " + section);
            }
        }
    }
    validate(cfg);
    return cfg;
}

void validate(const RunConfig& cfg)
{
    const auto& t = cfg.tol;
    if (!(t.algebraic > 0 && t.eigen > 0 && t.quadrature > 0 && t.kms > 0 && t.deficit > 0))
        throw Error("ConfigInvalid", "tolerances must be positive");
    const auto& s = cfg.samples;
    if (s.classify <= 0 || s.domains <= 0 || s.cr2 <= 0 || s.cr2_grid < 2 || s.hardy_points <= 0 ||
        s.cauchy_vectors <= 0 || s.schober <= 0 || s.hardy_pairs <= 0 || s.regnet <= 0)
        throw Error("ConfigInvalid", "sample counts must be positive");
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error("IoError", "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_toml(parse_toml(ss.str()));
}

void apply_env(RunConfig& cfg)
{
    if (const char* s = std::getenv("CROWNLAB_SEED"))
    {
        const std::string v = trim(s);
        if (!v.empty()) cfg.seed = static_cast<std::uint64_t>(to_long("CROWNLAB_SEED", v));
    }
}

cplx parse_complex(const std::string& raw)
{
    std::string s;
    for (char c : raw)
        if (c != ' ') s += c;
    if (s.empty()) throw Error("InvalidArgument", "empty complex number");
    auto num = [&](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return to_double("complex", t);
    };
    if (s.back() != 'i') return {num(s), 0.0};
    const std::string body = s.substr(0, s.size() - 1);
    // split at the last sign that is not part of an exponent or the leading sign
    for (size_t k = body.size(); k-- > 1;)
    {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E')
            return {num(body.substr(0, k)), num(body.substr(k))};
    }
    return {0.0, num(body)};
}

json to_json(cplx z)
{
    return json{{"re", z.real()}, {"im", z.imag()}};
}

std::vector<double> parse_list(const std::string& s)
{
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        item = trim(item);
        if (!item.empty()) out.push_back(to_double("list", item));
    }
    return out;
}

void write_atomic(const std::string& path, const std::string& content)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("IoError", "cannot write " + tmp);
        out << content;
        out.flush();
        if (!out) throw Error("IoError", "write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
    {
        std::remove(tmp.c_str());
        throw Error("IoError", "cannot rename onto " + path);
    }
}

LieAlgebra<double> algebra_from_json(const json& j)
{
    try
    {
        const int n = j.at("dim").get<int>();
        auto names = j.at("names").get<std::vector<std::string>>();
        const auto& c = j.at("c");
        if (n <= 0 || static_cast<int>(names.size()) != n || static_cast<int>(c.size()) != n)
            throw Error("InvalidStructure", "dim, names and c disagree");
        std::vector<Eigen::MatrixXd> m(n, Eigen::MatrixXd::Zero(n, n));
        for (int i = 0; i < n; ++i)
        {
            if (static_cast<int>(c[i].size()) != n) throw Error("InvalidStructure", "c has the wrong shape");
            for (int a = 0; a < n; ++a)
            {
                if (static_cast<int>(c[i][a].size()) != n) throw Error("InvalidStructure", "c has the wrong shape");
                for (int k = 0; k < n; ++k) m[i](a, k) = c[i][a][k].get<double>();
            }
        }
        return make_algebra<double>(std::move(names), std::move(m));
    }
    catch (const nlohmann::json::exception& e)
    {
        throw Error("InvalidStructure", e.what());
    }
}

LieAlgebra<double> load_algebra_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error("IoError", "cannot read " + path);
    json j;
    try
    {
        in >> j;
    }
    catch (const nlohmann::json::exception& e)
    {
        throw Error("InvalidStructure", e.what());
    }
    return algebra_from_json(j);
}

json algebra_to_json(const LieAlgebra<double>& g)
{
    json c = json::array();
    for (int i = 0; i < g.dim(); ++i)
    {
        json rows = json::array();
        for (int a = 0; a < g.dim(); ++a)
        {
            json row = json::array();
            for (int k = 0; k < g.dim(); ++k) row.push_back(g.c[i](a, k));
            rows.push_back(row);
        }
        c.push_back(rows);
    }
    return json{{"dim", g.dim()}, {"names", g.names}, {"c", c}};
}

json matrix_to_json(const Eigen::MatrixXd& m)
{
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
    {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        out.push_back(row);
    }
    return out;
}

json matrix_to_json(const Eigen::MatrixXcd& m)
{
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
    {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        out.push_back(row);
    }
    return out;
}

}  // namespace crownlab
