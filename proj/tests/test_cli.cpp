#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "sseq/fixtures.hpp"
#include "sseq/io.hpp"

using namespace sseq;
namespace fs = std::filesystem;

namespace {

fs::path tmp_dir()
{
    fs::path dir = SSEQ_TMP_DIR;
    fs::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args)
{
    std::string cmd = std::string(SSEQ_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

void write(const fs::path& p, const std::string& s)
{
    std::ofstream out(p);
    out << s;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("io: complex schema round trip and rejection of non-closed sets")
{
    auto K = fixtures::rp2();
    auto j = io::complex_to_json(K);
    auto K2 = io::complex_from_json(j);
    CHECK(K2.count(2) == 10);
    CHECK(K2.vertex_names() == K.vertex_names());

    io::json bad = {{"schema_version", 1},
                    {"vertices", {"a", "b"}},
                    {"simplices", {{0, 1}}}};
    CHECK_THROWS_AS(io::complex_from_json(bad), SchemaError);
    io::json noversion = {{"vertices", {"a"}}, {"simplices", {{0}}}};
    CHECK_THROWS_AS(io::complex_from_json(noversion), SchemaError);
}

TEST_CASE("io: graded ring schema")
{
    auto ku = GradedRing::laurent(2);
    auto j = io::ring_to_json(ku);
    auto ku2 = io::ring_from_json(j);
    CHECK(ku2.period() == ku.period());
    CHECK(ku2.level(-2).kind == LevelKind::Free);

    io::json ring = {{"schema_version", 1},
                     {"levels", {{"0", "Z"}, {"1", "Z/4"}}},
                     {"pairing", io::json::array()}};
    auto A = io::ring_from_json(ring);
    CHECK(A.level(1).modulus == 4);
}

TEST_CASE("cli: compute on the point fixture writes a one-entry page file")
{
    auto dir = tmp_dir();
    write(dir / "point.json", R"({"schema_version":1,"kind":"ahss",)"
                              R"("complex":"fixture:point","coefficients":"Z"})");
    CHECK(run_cli("compute --input " + (dir / "point.json").string() + " --out " + dir.string()
                  + " --pages 1")
          == 0);
    auto file = io::load_file((dir / "pages.json").string());
    CHECK(file["pages"].size() == 1);
    CHECK(file["pages"][0]["entries"].size() == 1);
    CHECK(file["pages"][0]["entries"][0]["rank"] == 1);
}

TEST_CASE("cli: check suite exits zero")
{
    CHECK(run_cli("check --range 4") == 0);
}

TEST_CASE("cli: pair on the torus diagonal tower")
{
    auto dir = tmp_dir();
    write(dir / "torus.json", R"({"schema_version":1,"kind":"ahss",)"
                              R"("complex":"fixture:torus","coefficients":"Z"})");
    CHECK(run_cli("pair --input " + (dir / "torus.json").string() + " --r 2 --out "
                  + dir.string())
          == 0);
    auto v = io::load_file((dir / "verdicts.json").string());
    CHECK(v["globally_isomorphic_to_graded_cup"] == true);
    CHECK(v["ungraded_discrepancy_sign_is_f2c1"] == true);
    CHECK(v["leibniz"] == true);
}

TEST_CASE("cli: convert round trips byte for byte")
{
    auto dir = tmp_dir();
    write(dir / "rp2.json", R"({"schema_version":1,"kind":"ahss",)"
                            R"("complex":"fixture:rp2","coefficients":"Z"})");
    REQUIRE(run_cli("compute --input " + (dir / "rp2.json").string() + " --out " + dir.string())
            == 0);
    REQUIRE(run_cli("convert --input " + (dir / "pages.json").string() + " --out "
                    + (dir / "homotopy.json").string())
            == 0);
    REQUIRE(run_cli("convert --input " + (dir / "homotopy.json").string() + " --out "
                    + (dir / "engine.json").string())
            == 0);
    CHECK(slurp(dir / "pages.json") == slurp(dir / "engine.json"));
    CHECK(slurp(dir / "pages.json") != slurp(dir / "homotopy.json"));
    auto flipped = io::load_file((dir / "homotopy.json").string());
    CHECK(flipped["indexing"] == "homotopy");
}

TEST_CASE("cli: schema violations exit with status 2")
{
    auto dir = tmp_dir();
    write(dir / "bad.json", R"({"kind":"ahss"})");
    CHECK(run_cli("compute --input " + (dir / "bad.json").string() + " --out " + dir.string())
          == 2);
    write(dir / "bad2.json", R"({"schema_version":1,"kind":"nonsense"})");
    CHECK(run_cli("compute --input " + (dir / "bad2.json").string() + " --out " + dir.string())
          == 2);
}

TEST_CASE("cli: bockstein and serre and descent and group kinds compute")
{
    auto dir = tmp_dir();
    write(dir / "bock.json", R"({"schema_version":1,"kind":"bockstein",)"
                             R"("complex":"fixture:rp2","modulus":2})");
    CHECK(run_cli("compute --input " + (dir / "bock.json").string() + " --out " + dir.string())
          == 0);

    auto circle = fixtures::circle();
    io::json serre = {{"schema_version", 1},
                      {"kind", "serre"},
                      {"map",
                       {{"schema_version", 1},
                        {"source", "fixture:torus"},
                        {"target", "fixture:circle"},
                        {"vertex_map", {0, 0, 0, 1, 1, 1, 2, 2, 2}}}},
                      {"modulus", 2}};
    write(dir / "serre.json", io::dump_canonical(serre));
    CHECK(run_cli("compute --input " + (dir / "serre.json").string() + " --out " + dir.string())
          == 0);

    io::json descent = {{"schema_version", 1},
                        {"kind", "descent"},
                        {"cover",
                         {{"base", "fixture:circle"},
                          {"pieces",
                           {{{0}, {1}, {0, 1}}, {{0}, {1}, {2}, {0, 2}, {1, 2}}}}}},
                        {"modulus", 0}};
    write(dir / "descent.json", io::dump_canonical(descent));
    CHECK(run_cli("compute --input " + (dir / "descent.json").string() + " --out "
                  + dir.string())
          == 0);

    io::json group = {{"schema_version", 1},
                      {"kind", "group"},
                      {"group", {{"schema_version", 1}, {"table", {{0, 1}, {1, 0}}}}},
                      {"coefficients", "Z"},
                      {"options", {{"max_page", 5}}}};
    write(dir / "group.json", io::dump_canonical(group));
    CHECK(run_cli("compute --input " + (dir / "group.json").string() + " --out " + dir.string())
          == 0);
    auto file = io::load_file((dir / "pages.json").string());
    /* H^2(Z/2;Z) = Z/2 appears in the table */
    bool found = false;
    for (const auto& e : file["pages"][0]["entries"])
        if (e["f"] == 2 && e["torsion"].size() == 1 && e["torsion"][0] == "2")
            found = true;
    CHECK(found);

    CHECK(run_cli("compute --input " + (dir / "bock.json").string() + " --out " + dir.string()
                  + " --format csv")
          == 0);
    CHECK(!slurp(dir / "pages.csv").empty());

    /* the bockstein kind also writes the couple with node tags and maps */
    auto couple = io::load_file((dir / "couple.json").string());
    bool has_d = false, has_e = false;
    for (const auto& e : couple["entries"]) {
        if (e["node"] == "D")
            has_d = true;
        if (e["node"] == "E")
            has_e = true;
    }
    CHECK(has_d);
    CHECK(has_e);
    CHECK(couple["maps"].contains("k"));

    /* modulus override switches the coefficient sequence */
    CHECK(run_cli("compute --input " + (dir / "bock.json").string() + " --out " + dir.string()
                  + " --modulus 3")
          == 0);
    auto pages3 = io::load_file((dir / "pages.json").string());
    CHECK(pages3["coefficient"] == "Z/3");
}

TEST_CASE("cli: external pairing of two towers")
{
    auto dir = tmp_dir();
    write(dir / "c1.json", R"({"schema_version":1,"kind":"ahss",)"
                           R"("complex":"fixture:circle","coefficients":"Z"})");
    CHECK(run_cli("pair --input " + (dir / "c1.json").string() + " --with "
                  + (dir / "c1.json").string() + " --r 2 --out " + dir.string())
          == 0);
    auto v = io::load_file((dir / "verdicts.json").string());
    CHECK(v["leibniz"] == true);
}
