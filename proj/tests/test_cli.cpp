#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(ASICPOVM_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.output.append(buf.data(), got);
    int status = pclose(pipe);
    res.exit_code = WEXITSTATUS(status);
    return res;
}

fs::path temp_file(const std::string& name) { return fs::temp_directory_path() / name; }

} // namespace

TEST_CASE("construct mub writes a q^2+q vector file") {
    auto path = temp_file("cli_mub9.json");
    auto res = run("construct mub --q 9 --out " + path.string());
    REQUIRE(res.exit_code == 0);
    CHECK(res.output.find("mub") != std::string::npos);
    std::ifstream in(path);
    nlohmann::json j = nlohmann::json::parse(in);
    CHECK(j.at("kind") == "vector_system");
    CHECK(j.at("vectors").size() == 90);
    fs::remove(path);
}

TEST_CASE("construct asic2 defaults r to 1 - p^-3") {
    auto path = temp_file("cli_asic2.json");
    auto res = run("construct asic2 --p 5 --out " + path.string());
    REQUIRE(res.exit_code == 0);
    std::ifstream in(path);
    nlohmann::json j = nlohmann::json::parse(in);
    CHECK(j.at("kind") == "projector_povm");
    CHECK(j.at("vectors").size() == 25);
    CHECK(j.at("provenance").at("perturb_r").get<double>() ==
          Catch::Approx(1.0 - std::pow(5.0, -3.0)).epsilon(1e-15));
    fs::remove(path);
}

TEST_CASE("construct amub-char picks p automatically") {
    auto path = temp_file("cli_amubchar.json");
    auto res = run("construct amub-char --n 6 --d 1 --out " + path.string());
    REQUIRE(res.exit_code == 0);
    std::ifstream in(path);
    nlohmann::json j = nlohmann::json::parse(in);
    CHECK(j.at("provenance").at("p") == 7);
    fs::remove(path);
}

TEST_CASE("construct rejects invalid parameters with nonzero exit") {
    CHECK(run("construct mub --q 12").exit_code != 0);
    CHECK(run("construct unknown-name --q 3").exit_code != 0);
    CHECK(run("construct asic2 --p 5 --r 1.5").exit_code != 0);
}

TEST_CASE("certify pipeline and exit codes") {
    auto path = temp_file("cli_certify_mub.json");
    REQUIRE(run("construct mub --q 3 --out " + path.string()).exit_code == 0);

    auto ok = run("certify --in " + path.string());
    CHECK(ok.exit_code == 0);
    nlohmann::json rep = nlohmann::json::parse(ok.output);
    CHECK(rep.at("passed") == true);
    CHECK(rep.at("kind") == "certification_report");

    // injected defect: scale one vector by 1.01 -> norm invariant violated, exit 1
    {
        std::ifstream in(path);
        nlohmann::json j = nlohmann::json::parse(in);
        for (auto& comp : j["vectors"][0]) {
            comp[0] = comp[0].get<double>() * 1.01;
            comp[1] = comp[1].get<double>() * 1.01;
        }
        std::ofstream out(path);
        out << j.dump(2) << '\n';
    }
    auto tampered = run("certify --in " + path.string());
    CHECK(tampered.exit_code == 1);
    nlohmann::json trep = nlohmann::json::parse(tampered.output);
    CHECK(trep.at("passed") == false);
    fs::remove(path);

    // malformed input: exit 2
    auto missing = run("certify --in /nonexistent/file.json");
    CHECK(missing.exit_code == 2);
    auto garbage_path = temp_file("cli_garbage.json");
    std::ofstream(garbage_path) << "{not json";
    CHECK(run("certify --in " + garbage_path.string()).exit_code == 2);
    std::ofstream(garbage_path) << "{\"kind\": \"vector_system\", \"schema_version\": 1}";
    CHECK(run("certify --in " + garbage_path.string()).exit_code == 2);
    fs::remove(garbage_path);
}

TEST_CASE("certify a stored POVM file") {
    auto path = temp_file("cli_povm3.json");
    REQUIRE(run("construct asic1 --q 3 --out " + path.string()).exit_code == 0);
    auto res = run("certify --in " + path.string());
    CHECK(res.exit_code == 0);
    nlohmann::json rep = nlohmann::json::parse(res.output);
    CHECK(rep.at("gram_rank") == 9);
    CHECK(rep.at("tomography_error").get<double>() <= 1e-8);
    fs::remove(path);
}

TEST_CASE("one-shot certify by name") {
    auto res = run("certify --name asic1 --q 7");
    CHECK(res.exit_code == 0);
    nlohmann::json rep = nlohmann::json::parse(res.output);
    CHECK(rep.at("gram_rank") == 49);
    CHECK(rep.at("provenance").at("construction") == "asic1");
}

TEST_CASE("certify accepts the worked two-dimensional fixture") {
    // the four fiducial-orbit vectors, written out as a plain system file
    nlohmann::json j;
    j["schema_version"] = 1;
    j["kind"] = "vector_system";
    j["n"] = 2;
    j["provenance"] = {{"construction", "intro"}, {"dim", 2}};
    j["basis_groups"] = nlohmann::json::array();
    const double t = 1.0 / 3.0;
    j["vectors"] = {
        {{t, 0.0}, {2 * t, 2 * t}},
        {{2 * t, 2 * t}, {t, 0.0}},
        {{t, 0.0}, {-2 * t, -2 * t}},
        {{2 * t, 2 * t}, {-t, 0.0}},
    };
    j["labels"] = nlohmann::json::array();
    for (int i = 1; i <= 4; ++i)
        j["labels"].push_back({{"family", "fiducial-orbit"}, {"index", {i}}});
    auto path = temp_file("cli_intro.json");
    std::ofstream(path) << j.dump(2) << '\n';
    auto res = run("certify --in " + path.string());
    CHECK(res.exit_code == 0);
    nlohmann::json rep = nlohmann::json::parse(res.output);
    CHECK(rep.at("passed") == true);
    // the two distinct squared overlaps are n^2 tr(EiEj) = {16/81, 49/81}
    CHECK(rep.at("overlap_max_sq").get<double>() == Catch::Approx(49.0 / 81.0).margin(1e-12));
    fs::remove(path);
}

TEST_CASE("certify output is byte-identical across runs") {
    auto a = run("certify --name mub --q 3");
    auto b = run("certify --name mub --q 3");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    // --timing adds the only nondeterministic field
    auto t = run("certify --name mub --q 3 --timing");
    CHECK(t.output != a.output);
    CHECK(t.output.find("wall_time_ms") != std::string::npos);
}

TEST_CASE("scan emits one sorted row per parameter point") {
    auto res = run("scan --name mub --q 5,3 --format csv");
    REQUIRE(res.exit_code == 0);
    std::istringstream ss(res.output);
    std::string header, row3, row5, extra;
    REQUIRE(std::getline(ss, header));
    REQUIRE(std::getline(ss, row3));
    REQUIRE(std::getline(ss, row5));
    CHECK_FALSE(std::getline(ss, extra));
    CHECK(header.find("construction") == 0);
    CHECK(row3.substr(0, 6) == "mub,3,");
    CHECK(row5.substr(0, 6) == "mub,5,");
    CHECK(row3.find("true") != std::string::npos);

    // per-point failures are recorded in-row, scan continues
    auto partial = run("scan --name mub --q 3,4 --format csv");
    REQUIRE(partial.exit_code == 0);
    CHECK(partial.output.find("prime power") != std::string::npos);
}

TEST_CASE("scan asic1 trend column stays under 1.6") {
    auto res = run("scan --name asic1 --q 3,5 --format csv");
    REQUIRE(res.exit_code == 0);
    std::istringstream ss(res.output);
    std::string header;
    REQUIRE(std::getline(ss, header));
    // locate the max_sq_times_n column
    int col = 0, target = -1;
    {
        std::istringstream hs(header);
        std::string name;
        while (std::getline(hs, name, ',')) {
            if (name == "max_sq_times_n") target = col;
            ++col;
        }
    }
    REQUIRE(target >= 0);
    std::string line;
    int rows = 0;
    while (std::getline(ss, line)) {
        std::istringstream ls(line);
        std::string cell;
        for (int i = 0; i <= target; ++i) REQUIRE(std::getline(ls, cell, ','));
        CHECK(std::stod(cell) <= 1.6);
        ++rows;
    }
    CHECK(rows == 2);
}

TEST_CASE("scan json format") {
    auto res = run("scan --name amub-char --n 4,6 --d 1 --format json");
    REQUIRE(res.exit_code == 0);
    nlohmann::json rows = nlohmann::json::parse(res.output);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].at("n") == 4);
    CHECK(rows[1].at("n") == 6);
    CHECK(rows[0].at("passed") == true);
    // bound column carries sqrt(p)/n for the n = p-1 instances
    CHECK(rows[0].at("explicit_bound_value").get<double>() ==
          Catch::Approx(std::sqrt(5.0) / 4.0).epsilon(1e-14));
    CHECK(rows[1].at("explicit_bound_value").get<double>() ==
          Catch::Approx(std::sqrt(7.0) / 6.0).epsilon(1e-14));
}

TEST_CASE("bounds gauss and mixed kinds") {
    auto res = run("bounds --kind gauss --p 13 --format csv");
    REQUIRE(res.exit_code == 0);
    CHECK(res.output.find("gauss,13,") != std::string::npos);
    // modulus equals sqrt(13): ratio column is 1 to rounding
    {
        std::istringstream ss(res.output);
        std::string line;
        std::getline(ss, line); // header
        REQUIRE(std::getline(ss, line));
        double ratio = std::stod(line.substr(line.rfind(',') + 1));
        CHECK(ratio == Catch::Approx(1.0).margin(1e-12));
    }

    auto mixed = run("bounds --kind mixed --p 101 --deg 3 --k 1 --n 100 --format json");
    REQUIRE(mixed.exit_code == 0);
    nlohmann::json rows = nlohmann::json::parse(mixed.output);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].at("ratio").get<double>() < 0.21);

    // report-only sweep across several primes: rows exist, ratios finite
    auto sweep = run("bounds --kind mixed --p 101,151,251,401 --deg 3 --k 1 --n 100 --format json");
    REQUIRE(sweep.exit_code == 0);
    nlohmann::json srows = nlohmann::json::parse(sweep.output);
    REQUIRE(srows.size() == 4);
    for (const auto& row : srows) {
        CHECK(row.at("ratio").get<double>() >= 0.0);
        CHECK(row.at("sum_modulus").get<double>() >= 0.0);
    }

    auto weyl = run("bounds --kind weyl --p 101 --deg 3 --range 50 --format json");
    REQUIRE(weyl.exit_code == 0);
    nlohmann::json wrows = nlohmann::json::parse(weyl.output);
    REQUIRE(wrows.size() == 1);
    CHECK(wrows[0].at("bound").get<double>() > 0.0);
}

TEST_CASE("bounds weil sweep on small primes") {
    auto res = run("bounds --kind weil --p-max 13 --deg 3 --format csv");
    REQUIRE(res.exit_code == 0);
    // every aggregated ratio is <= 1
    std::istringstream ss(res.output);
    std::string line;
    std::getline(ss, line); // header
    int rows = 0;
    while (std::getline(ss, line)) {
        auto last = line.rfind(',');
        double ratio = std::stod(line.substr(last + 1));
        CHECK(ratio <= 1.0 + 1e-9);
        ++rows;
    }
    CHECK(rows == 5); // p in {3,5,7,11,13}
}
