#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "ionchain/sweep.hpp"
#include "json.hpp"
#include "run_process.hpp"

using nlohmann::json;

namespace {

int line_count(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("modes as json") {
    const auto r = run_cli("modes --n 3 --mu 1 --branch axial --format json");
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    const auto f = doc["payload"]["frequencies"];
    CHECK(f[0].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f[1].get<double>() == doctest::Approx(1.7320508075688772).epsilon(1e-12));
    CHECK(f[2].get<double>() == doctest::Approx(2.4083189157584592).epsilon(1e-12));
    CHECK(doc["metadata"]["version"] == "0.1.0");
    CHECK(doc["metadata"]["deterministic"] == true);
    CHECK(doc["metadata"]["config"]["n"] == 3);
    // Round trip: parse -> dump -> parse is stable.
    const auto again = json::parse(doc.dump());
    CHECK(again == doc);
    CHECK(again.dump() == doc.dump());
}

TEST_CASE("modes as csv") {
    const auto r = run_cli("modes --n 5 --mu 2 --branch transverse --epsilon-ratio 1.2");
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("# ionchain modes version=0.1.0\nmode,squared_frequency,frequency,class,v_1", 0) == 0);
    CHECK(line_count(r.out) == 7);
}

TEST_CASE("stability") {
    const auto r = run_cli("stability --n 3 --mu 1");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("1,1.70293863659,center_moving") != std::string::npos);

    const auto c = run_cli("stability --n 3 --mu-min 0.01 --mu-max 100 --points 21 --format json");
    REQUIRE(c.code == 0);
    const auto doc = json::parse(c.out);
    CHECK(doc["payload"]["epsilon_s"].size() == 21);
    CHECK(doc["payload"]["cusp"]["mu"].get<double>() == doctest::Approx(0.3 / 1.7).epsilon(1e-5));

    CHECK(run_cli("stability --n 3").code == 2);
    CHECK(run_cli("stability --n 3 --mu 1 --mu-min 0.1").code == 2);
}

TEST_CASE("physical") {
    const auto r = run_cli("physical --outer Be9 --center Mg24 --fz-mhz 10 --branch axial --format json");
    REQUIRE(r.code == 0);
    const auto p = json::parse(r.out)["payload"];
    CHECK(p["logic_spacing_hz"].get<double>() == doctest::Approx(1.6e6).epsilon(0.03));
    CHECK(p["logic_mode"] == 2);

    const auto t = run_cli("physical --outer Be9 --center Mg24 --fz-mhz 10 --branch transverse");
    REQUIRE(t.code == 0);
    CHECK(t.out.find("radial_frequency_hz,2755") != std::string::npos);
    CHECK(run_cli("physical --outer Be9 --center Xx9 --fz-mhz 10").code == 2);
}

TEST_CASE("heating") {
    const auto r = run_cli("heating --n 3 --mu 1 --format json");
    REQUIRE(r.code == 0);
    const auto rates = json::parse(r.out)["payload"]["normalized_rates"];
    CHECK(rates[0].get<double>() == doctest::Approx(1.0).epsilon(1e-12));

    const auto p = run_cli("heating --n 3 --physical --outer Be9 --center Mg24 --fz-mhz 10 --se 1e-12");
    REQUIRE(p.code == 0);
    CHECK(p.out.find("quanta_per_second") != std::string::npos);
    CHECK(run_cli("heating --n 3 --physical --outer Be9 --center Mg24 --fz-mhz 10").code == 2);
    CHECK(run_cli("heating --n 3 --mu 2.5 --physical --outer Be9 --center Mg24 --fz-mhz 10 --se 1e-12").code == 2);
    CHECK(run_cli("heating --n 3 --mu 1 --branch transverse --epsilon 1.0").code == 2);
}

TEST_CASE("trajectory") {
    const auto r = run_cli("trajectory --n 3 --mu 1 --mode 1 --amplitude 0.1 --phase 0 --t-max 6.283185307179586 --samples 3");
    REQUIRE(r.code == 0);
    CHECK(line_count(r.out) == 5);
    CHECK(r.out.find("\n0,0.057735026919,") != std::string::npos);
    const auto bad = run_cli("trajectory --n 3 --mu 1 --branch transverse --epsilon 1.2 --mode 1");
    CHECK(bad.code == 2);
    CHECK(line_count(bad.err) == 1);
    CHECK(run_cli("trajectory --n 3 --mu 1 --mode 4").code == 2);
}

TEST_CASE("invalid physics exits 2 with a one-line reason") {
    for (const char* args : {"modes --n 4 --mu 1", "modes --n 3 --mu 0", "modes --n 3 --mu -1",
                             "equilibrium --n 2", "modes --n 3 --mu 1 --branch transverse"}) {
        CAPTURE(args);
        const auto r = run_cli(args);
        CHECK(r.code == 2);
        CHECK(line_count(r.err) == 1);
        CHECK(r.out.empty());
    }
}

TEST_CASE("usage errors exit 2") {
    const auto r = run_cli("frobnicate");
    CHECK(r.code == 2);
    CHECK(r.err.find("Usage") != std::string::npos);
    CHECK(run_cli("modes --n 3 --mu 1 --bogus").code == 2);
    CHECK(run_cli("modes --n three --mu 1").code == 2);
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("--format xml modes --n 3 --mu 1").code == 2);
    CHECK(run_cli("--help").code == 0);
}

TEST_CASE("species") {
    const auto r = run_cli("species --list");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("Be9,9.0122,1\nMg24,23.985,1\n") != std::string::npos);

    const auto dir = std::filesystem::temp_directory_path() / ("ionchain_cli_species_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    {
        std::ofstream(dir / "good.txt") << "Ca40 39.9626 1\n";
        std::ofstream(dir / "bad.txt") << "Ca40 heavy 1\n";
    }
    const auto add = run_cli("species --add " + (dir / "good.txt").string());
    REQUIRE(add.code == 0);
    CHECK(add.out.find("Ca40,39.9626,1") != std::string::npos);
    CHECK(run_cli("species --add " + (dir / "bad.txt").string()).code == 2);
    CHECK(run_cli("species --add " + (dir / "missing.txt").string()).code == 1);
    CHECK(run_cli("species").code == 2);

    const auto mixed = run_cli("--species-file " + (dir / "good.txt").string() +
                               " physical --outer Ca40 --center Be9 --fz-mhz 2");
    CHECK(mixed.code == 0);
    std::filesystem::remove_all(dir);
}

TEST_CASE("figure output matches the library") {
    const auto dir = std::filesystem::temp_directory_path() / ("ionchain_cli_fig_" + std::to_string(::getpid()));
    const auto r = run_cli("--quiet figure --id 4 --out " + dir.string());
    REQUIRE(r.code == 0);
    CHECK(r.err.empty());
    for (int n : ionchain::kFigurePanels)
        CHECK(read_file(dir / ("figure4_n" + std::to_string(n) + ".csv")) == ionchain::figure_csv(4, n));
    CHECK(run_cli("figure --id 9 --out " + dir.string()).code == 2);
    std::filesystem::remove_all(dir);
}
