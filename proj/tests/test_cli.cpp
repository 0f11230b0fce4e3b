#include <doctest.h>

#include <json.hpp>

#include "cli_runner.hpp"
#include "definetti/io.hpp"

using namespace definetti;

namespace {

std::string polya_law() {
    static const std::string p = [] {
        const auto file = cli::path("polya11_n6.json");
        REQUIRE(cli::run("generate --kind polya --counts 1,1 --n 6 -o " + file).status == 0);
        return file;
    }();
    return p;
}

}  // namespace

TEST_CASE("generate") {
    const auto law = load_law(polya_law());
    CHECK(law.seq_probs() == polya({1, 1}, 6).seq_probs());

    const auto pair = cli::run("generate --kind diaconis_pair");
    REQUIRE(pair.status == 0);
    CHECK(parse_law(pair.out).seq_probs() == diaconis_pair().seq_probs());

    const auto a = cli::run("generate --kind random_dirichlet --alphabet-size 3 --n 5 --seed 12");
    const auto b = cli::run("generate --kind random_dirichlet --alphabet-size 3 --n 5 --seed 12");
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);

    CHECK(cli::run("generate --kind random_dirichlet --alphabet-size 3 --n 5").status == 2);
    CHECK(cli::run("generate --kind bogus --n 3").status == 2);
    CHECK(cli::run("generate --kind urn --counts 1,1 --n 3").status == 2);
    CHECK(cli::run("generate --kind iid_mixture --components \"0.3,0.7;0.7,0.3\" --weights 0.5,0.4 --n 3").status == 2);
}

TEST_CASE("certify") {
    const auto iid_file = cli::path("iid.json");
    REQUIRE(cli::run("generate --kind iid --components 0.2,0.8 --n 5 -o " + iid_file).status == 0);
    const auto r = cli::run("certify --law " + iid_file + " --k 2");
    REQUIRE(r.status == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["D"].get<double>() <= 1e-12);

    CHECK(cli::run("certify --law " + polya_law() + " --k 6").status == 2);
    CHECK(cli::run("certify --law " + polya_law() + " --k 0").status == 2);
    CHECK(cli::run("certify --law /nonexistent.json --k 1").status == 2);

    // Full row for Polya(1,1), n=6, k=2 against the frozen file.
    const auto csv = cli::run("certify --law " + polya_law() + " --k 2 --format csv");
    REQUIRE(csv.status == 0);
    CHECK(csv.out == cli::slurp(DEFINETTI_TEST_DATA "/polya11_n6_k2.csv"));

    const auto bits = cli::run("certify --law " + polya_law() + " --k 2 --bits");
    CHECK(nlohmann::json::parse(bits.out)["units"] == "bits");
}

TEST_CASE("compare") {
    const auto r = cli::run("compare --law " + polya_law() + " --k 2");
    REQUIRE(r.status == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.contains("certificate"));
    CHECK(doc["comparison"].size() >= 8);
    const auto csv = cli::run("compare --law " + polya_law() + " --k 2 --format csv");
    REQUIRE(csv.status == 0);
    CHECK(csv.out.rfind("quantity,kind,value,holds\n", 0) == 0);
}

TEST_CASE("sweep") {
    const auto r = cli::run("sweep --kind iid_mixture --components \"0.7,0.3;0.3,0.7\" --weights 0.5,0.5 --n 3:12 --k 2:2");
    REQUIRE(r.status == 0);
    const auto table = parse_csv(r.out);
    CHECK(table.header == kCertificateCsvHeader);
    REQUIRE(table.rows.size() == 10);
    double prev = 1e300;
    for (const auto& row : table.rows) {
        const double D = std::stod(row[3]);
        CHECK(D <= prev + 1e-10);
        prev = D;
    }
    CHECK(write_csv(table) == r.out);

    CHECK(cli::run("sweep --kind polya --counts 1,1 --n 5:4 --k 1:2").status == 2);
    CHECK(cli::run("sweep --kind polya --counts 1,1 --n 3:4 --k 4:6").status == 2);

    const auto from_law = cli::run("sweep --law " + polya_law() + " --n 3:6 --k 1:5");
    REQUIRE(from_law.status == 0);
    CHECK(parse_csv(from_law.out).rows.size() == 2 + 3 + 4 + 5);
}

TEST_CASE("optimize") {
    const auto r = cli::run("optimize --law " + polya_law() + " --k 2 --grid-resolution 20");
    REQUIRE(r.status == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.is_object());

    const auto pair = cli::path("pair.json");
    REQUIRE(cli::run("generate --kind diaconis_pair -o " + pair).status == 0);
    CHECK(cli::run("optimize --law " + pair + " --k 2").status == 2);
    CHECK(cli::run("certify --law " + pair + " --k 2").status == 2);
    CHECK(cli::run("optimize --law " + polya_law() + " --k 2 --grid-resolution 0").status == 2);
}

TEST_CASE("search") {
    const auto r = cli::run("search --alphabet-size 2 --n 4 --k 2 --seed 0 --restarts 5 --steps 50");
    REQUIRE(r.status == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.is_object());
    CHECK(cli::run("search --alphabet-size 2 --n 4 --k 4").status == 2);
}

TEST_CASE("determinism across reruns and thread counts") {
    const std::string commands[] = {
        "certify --law " + polya_law() + " --k 3",
        "compare --law " + polya_law() + " --k 2 --format csv",
        "sweep --kind polya --counts 1,2 --n 3:9 --k 1:4",
        "sweep --kind random_dirichlet --alphabet-size 3 --seed 4 --n 3:7 --k 1:3 --format json",
        "optimize --law " + polya_law() + " --k 2 --grid-resolution 10",
        "search --alphabet-size 2 --n 5 --k 2 --seed 3 --restarts 6 --steps 40",
        "generate --kind random_dirichlet --alphabet-size 2 --n 6 --seed 1",
    };
    for (const auto& c : commands) {
        INFO(c);
        const auto one = cli::run(c, "DEFINETTI_THREADS=1");
        const auto again = cli::run(c, "DEFINETTI_THREADS=1");
        const auto eight = cli::run(c, "DEFINETTI_THREADS=8");
        REQUIRE(one.status == 0);
        CHECK(one.out == again.out);
        CHECK(one.out == eight.out);
    }
}

TEST_CASE("usage errors") {
    CHECK(cli::run("").status == 2);
    CHECK(cli::run("frobnicate").status == 2);
    CHECK(cli::run("certify --k 2").status == 2);
    CHECK(cli::run("--help").status == 0);
}
