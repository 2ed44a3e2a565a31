#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "crownlab/io.hpp"

using namespace crownlab;

TEST_CASE("toml subset")
{
    const TomlDoc d = parse_toml("seed = 7 # top\n[tolerances]\nkms = 1e-7\n\n[run]\nout_dir = \"a # b\"\n");
    CHECK(d.at("").at("seed") == "7");
    CHECK(d.at("tolerances").at("kms") == "1e-7");
    CHECK(d.at("run").at("out_dir") == "a # b");
    CHECK_THROWS_AS(parse_toml("[bad\n"), Error);
    CHECK_THROWS_AS(parse_toml("novalue\n"), Error);
    CHECK_THROWS_AS(parse_toml("a = 1\na = 2\n"), Error);

    const RunConfig c = config_from_toml(d);
    CHECK(c.seed == 7);
    CHECK(c.tol.kms == 1e-7);
    CHECK(c.out_dir == "a # b");
    CHECK_THROWS_AS(config_from_toml(parse_toml("[samples]\nclassify = 2.5\n")), Error);
    CHECK_THROWS_AS(config_from_toml(parse_toml("[samples]\nbogus = 1\n")), Error);
    CHECK_THROWS_AS(config_from_toml(parse_toml("[tolerances]\nkms = -1\n")), Error);
    CHECK_THROWS_AS(config_from_toml(parse_toml("[other]\nx = 1\n")), Error);
}

TEST_CASE("seed from the environment")
{
    RunConfig c;
    setenv("CROWNLAB_SEED", "99", 1);
    apply_env(c);
    CHECK(c.seed == 99);
    setenv("CROWNLAB_SEED", "x", 1);
    CHECK_THROWS_AS(apply_env(c), Error);
    unsetenv("CROWNLAB_SEED");
}

TEST_CASE("complex numbers")
{
    CHECK(parse_complex("1+2i") == cplx(1, 2));
    CHECK(parse_complex("1.5-0.25i") == cplx(1.5, -0.25));
    CHECK(parse_complex("-3") == cplx(-3, 0));
    CHECK(parse_complex("2i") == cplx(0, 2));
    CHECK(parse_complex("-i") == cplx(0, -1));
    CHECK(parse_complex("1e-3+2e+1i") == cplx(1e-3, 20));
    CHECK_THROWS_AS(parse_complex("abc"), Error);
    CHECK_THROWS_AS(parse_complex(""), Error);
    CHECK(parse_list("1, 2,3") == std::vector<double>{1, 2, 3});
}

TEST_CASE("atomic write and algebra round trip")
{
    const std::string path = "crownlab_io_test.json";
    const auto g = catalog("split_oscillator").algebra;
    write_atomic(path, algebra_to_json(g).dump());
    const auto h = load_algebra_json(path);
    std::remove(path.c_str());
    CHECK(h.names == g.names);
    for (int i = 0; i < g.dim(); ++i) CHECK((h.c[i] - g.c[i]).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(algebra_from_json(json{{"dim", 2}, {"names", {"a"}}, {"c", json::array()}}), Error);
    CHECK_THROWS_AS(write_atomic("/nonexistent_dir/x.json", "{}"), Error);
}
