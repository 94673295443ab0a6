#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "fracdisp/config.hpp"
#include "fracdisp/errors.hpp"

using namespace fracdisp;

TEST_CASE("default config is valid") {
    const RunConfig c;
    CHECK_NOTHROW(c.validate());
    CHECK_FALSE(c.t_grid.empty());
    CHECK(c.x_grid.front() == 0.0);
}

TEST_CASE("config round trip is lossless") {
    RunConfig c;
    c.spec = KernelSpec{3, 0.3, 2.5, Normalization::symmetric};
    c.t_grid = {0.1, 1.0 / 3.0, 1e4};
    c.j_grid = {-2, 0, 5};
    c.x_grid = {0.0, 0.1 + 0.2, 17.0};
    c.rel_tol = 3e-9;
    c.out_dir = "runs/a";
    c.threads = 4;
    const RunConfig back = config_from_json(Json::parse(to_json(c).dump()));
    CHECK(back == c);

    const std::string path = (std::filesystem::temp_directory_path() / "fracdisp_config_test.json").string();
    save_config(path, c);
    CHECK(load_config(path) == c);
    std::remove(path.c_str());
}

TEST_CASE("partial documents keep defaults") {
    const RunConfig c = config_from_json(Json::parse(R"({"spec": {"alpha": 0.8}})"));
    CHECK(c.spec.alpha == 0.8);
    CHECK(c.spec.beta == RunConfig{}.spec.beta);
    CHECK(c.t_grid == RunConfig{}.t_grid);
}

TEST_CASE("invalid documents are rejected") {
    CHECK_THROWS_AS(config_from_json(Json::parse(R"({"spec": {"gamma": 1}})")), DomainError);
    CHECK_THROWS_AS(config_from_json(Json::parse(R"({"extra": 1})")), DomainError);
    CHECK_THROWS_AS(config_from_json(Json::parse(R"({"grids": {"t": []}})")), DomainError);
    CHECK_THROWS_AS(config_from_json(Json::parse(R"({"tolerances": {"rel_tol": 0}})")), DomainError);
    CHECK_THROWS_AS(config_from_json(Json::parse(R"({"spec": {"alpha": "half"}})")), DomainError);
    CHECK_THROWS_AS(config_from_json(Json::parse(R"({"spec": {"alpha": 2}})")), DomainError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), DomainError);
}
