#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstring>
#include <filesystem>

#include "asicpovm/constructions.hpp"
#include "asicpovm/serialize.hpp"

using namespace asicpovm;

TEST_CASE("vector system JSON round trip is lossless") {
    auto sys = amub_character(6, 1);
    json j = to_json(sys);
    auto back = vector_system_from_json(j);

    REQUIRE(back.size() == sys.size());
    REQUIRE(back.dim == sys.dim);
    REQUIRE(back.labels == sys.labels);
    REQUIRE(back.basis_groups == sys.basis_groups);
    REQUIRE(back.provenance == sys.provenance);
    for (std::size_t i = 0; i < sys.size(); ++i)
        REQUIRE(std::memcmp(back.vectors[i].data(), sys.vectors[i].data(),
                            sys.dim * sizeof(la::cplx)) == 0);

    // and the serialization itself is deterministic
    CHECK(j.dump() == to_json(vector_system_from_json(j)).dump());
}

TEST_CASE("POVM JSON round trip is lossless") {
    auto povm = asic_pruned(3);
    json j = to_json(povm);
    auto back = povm_from_json(j);

    REQUIRE(back.dim == povm.dim);
    REQUIRE(back.kind == povm.kind);
    REQUIRE(back.labels == povm.labels);
    for (std::size_t i = 0; i < povm.size(); ++i)
        REQUIRE(std::memcmp(back.vectors[i].data(), povm.vectors[i].data(),
                            povm.dim * sizeof(la::cplx)) == 0);
    REQUIRE(std::memcmp(back.frame_operator.data().data(), povm.frame_operator.data().data(),
                        povm.dim * povm.dim * sizeof(la::cplx)) == 0);
    REQUIRE(std::memcmp(back.symmetrizer.data().data(), povm.symmetrizer.data().data(),
                        povm.dim * povm.dim * sizeof(la::cplx)) == 0);

    // a reloaded POVM certifies identically
    auto rep1 = certify_povm(povm);
    auto rep2 = certify_povm(back);
    CHECK(to_json(rep1).dump() == to_json(rep2).dump());
}

TEST_CASE("raw POVM serializes with null symmetrizer") {
    auto raw = raw_povm(mub_prime_power(3));
    json j = to_json(raw);
    CHECK(j.at("symmetrizer").is_null());
    auto back = povm_from_json(j);
    CHECK(back.kind == ProjectorPOVM::Kind::raw);
    CHECK(back.symmetrizer.empty());
}

TEST_CASE("report JSON carries the schema fields") {
    auto rep = certify_povm(asic_pruned(3));
    json j = to_json(rep);
    CHECK(j.at("schema_version") == 1);
    CHECK(j.at("kind") == "certification_report");
    for (const char* key :
         {"provenance", "n", "element_count", "completeness_residual", "gram_rank",
          "required_rank", "overlap_max_sq", "overlap_mean_sq", "overlap_histogram",
          "unbiasedness_max_dev", "frame_bound_lower", "frame_bound_upper", "explicit_bound_value",
          "bound_satisfied", "reference_bound_value", "tomography_error", "scan_mode",
          "hard_checks", "passed"})
        CHECK(j.contains(key));
    CHECK_FALSE(j.contains("wall_time_ms"));
    CHECK(to_json(rep, true).contains("wall_time_ms"));
    CHECK(j.at("overlap_histogram").size() == 64);
    CHECK(j.at("scan_mode") == "exhaustive");
}

TEST_CASE("CSV row matches the header arity") {
    auto rep = certify_system(mub_prime_power(3));
    std::string header = csv_header();
    std::string row = to_csv_row(rep);
    auto count = [](const std::string& s) {
        std::size_t n = 1;
        for (char c : s)
            if (c == ',') ++n;
        return n;
    };
    CHECK(count(header) == count(row));
    // reals carry 17 significant digits: spot the unbiasedness column
    CHECK(row.find("exhaustive") != std::string::npos);
}

TEST_CASE("file save/load round trip") {
    namespace fs = std::filesystem;
    fs::path path = fs::temp_directory_path() / "asicpovm_test_system.json";
    auto sys = mub_prime_power(3);
    save_json(to_json(sys), path.string());
    auto loaded = vector_system_from_json(load_json(path.string()));
    CHECK(loaded.size() == sys.size());
    for (std::size_t i = 0; i < sys.size(); ++i)
        REQUIRE(std::memcmp(loaded.vectors[i].data(), sys.vectors[i].data(),
                            sys.dim * sizeof(la::cplx)) == 0);
    fs::remove(path);

    CHECK_THROWS(load_json("/nonexistent/path.json"));
}

TEST_CASE("malformed documents are rejected") {
    CHECK_THROWS_AS(vector_system_from_json(json{{"kind", "something_else"}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(povm_from_json(json{{"kind", "vector_system"}}), std::invalid_argument);
    json wrong_version = to_json(mub_prime_power(3));
    wrong_version["schema_version"] = 99;
    CHECK_THROWS_AS(vector_system_from_json(wrong_version), std::invalid_argument);
    json bad_dim = to_json(mub_prime_power(3));
    bad_dim["n"] = 7;
    CHECK_THROWS_AS(vector_system_from_json(bad_dim), std::invalid_argument);
}
