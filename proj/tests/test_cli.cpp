#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "tsvs/io.hpp"

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    std::string out_path = "/tmp/tsvs_out_" + std::to_string(counter) + ".txt";
    std::string err_path = "/tmp/tsvs_err_" + std::to_string(counter) + ".txt";
    ++counter;
    std::string cmd = std::string(TSVS_CLI_PATH) + " " + args + " > " + out_path + " 2> " + err_path;
    int status = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = WEXITSTATUS(status);
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

std::string fixture(const std::string& name) { return std::string(TSVS_FIXTURES_DIR) + "/" + name; }

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("cli classify") {
    CliResult r = run_cli("classify " + fixture("cbrt2.field"));
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "orbit 1: size 1 trivial factor: x - g"));
    CHECK(contains(r.out, "orbit 2: size 2 factor: x^2 + g*x + g^2"));
}

TEST_CASE("cli k0 presentations") {
    CliResult r3 = run_cli("k0 " + fixture("cbrt2.field"));
    CHECK(r3.exit_code == 0);
    CHECK(contains(r3.out, "Z[x1]/(x1^2 - x1 - 2)"));

    CliResult r5 = run_cli("k0 " + fixture("fifthroot2.field"));
    CHECK(contains(r5.out, "Z[x1]/(x1^2 - 3*x1 - 4)"));

    CliResult r2 = run_cli("k0 " + fixture("sqrt2.field"));
    CHECK(contains(r2.out, "Z[x1]/(x1^2 - 1)"));
    CHECK(contains(r2.out, "group ring: Z[C2]"));

    CliResult ri = run_cli("k0 " + fixture("gauss.field"));
    CHECK(contains(ri.out, "group ring: Z[C2]"));

    CliResult rq = run_cli("k0 " + fixture("rat.field"));
    CHECK(rq.exit_code == 0);
    CHECK(contains(rq.out, "Z\n"));
}

TEST_CASE("cli simple with the zeta basis reproduces the hom fixture") {
    CliResult r = run_cli("simple " + fixture("cbrt2.field") + " --orbit 2 --basis " +
                          fixture("zeta.basis"));
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "gen_image: [[0, -g], [g, -g]]"));
}

TEST_CASE("cli end") {
    CliResult r = run_cli("end " + fixture("cbrt2.field") + " --orbit 2");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "checks: pairwise commute ok"));
}

TEST_CASE("cli tensor and decompose round") {
    std::string tensor_out = "/tmp/tsvs_tensor.hom";
    CliResult r = run_cli("tensor " + fixture("cbrt2_simple.hom") + " " +
                          fixture("cbrt2_simple.hom"));
    CHECK(r.exit_code == 0);
    {
        std::ofstream os(tensor_out);
        os << r.out;
    }
    CliResult d = run_cli("decompose " + tensor_out);
    CHECK(d.exit_code == 0);
    CHECK(contains(d.out, "decomposition: orbit 1 ^ 2 + orbit 2 ^ 1"));
    std::remove(tensor_out.c_str());
}

TEST_CASE("cli similar") {
    CliResult r = run_cli("similar " + fixture("cbrt2_simple.hom") + " " +
                          fixture("cbrt2_simple.hom"));
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "similar: true"));
    CliResult r2 = run_cli("similar " + fixture("cbrt2_simple.hom") + " " +
                           fixture("cbrt2_trivial.hom"));
    CHECK(r2.exit_code == 0);
    CHECK(contains(r2.out, "similar: false"));
}

TEST_CASE("cli jordan-order rejects the corner fixture and fixes the good one") {
    CliResult bad = run_cli("jordan-order " + fixture("bad.mat"));
    CHECK(bad.exit_code == 1);
    CHECK(contains(bad.err, "NotJordanOrdered"));

    CliResult good = run_cli("jordan-order " + fixture("good.mat"));
    CHECK(good.exit_code == 0);
    CHECK(contains(good.out, "P upper triangular: ok"));
}

TEST_CASE("cli jcf") {
    CliResult r = run_cli("jcf " + fixture("bad.mat"));
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "blocks: 2: (2, 1)"));
}

TEST_CASE("cli hs commands") {
    CliResult hom = run_cli("hs-hom " + fixture("hasse1.hs"));
    CHECK(hom.exit_code == 0);
    CHECK(contains(hom.out, "funcfield t\n[[t, 1], [0, t]]"));

    CliResult comp = run_cli("hs-compose " + fixture("hasse1.hs") + " " + fixture("identity.hs"));
    CHECK(comp.exit_code == 0);
    CHECK(contains(comp.out, "hs over funcfield t: [D0; D1]"));

    // the formula result of a degree-crossing product fails re-verification
    CliResult viol = run_cli("hs-compose " + fixture("hasse1.hs") + " " + fixture("hasse1.hs"));
    CHECK(viol.exit_code == 1);
    CHECK(contains(viol.err, "LeibnizViolation"));

    // valid order-2 tail {t D1, t^2 D2 + 2 D1} passes validation in hs-hom
    CliResult scaled = run_cli("hs-hom " + fixture("scaled2.hs"));
    CHECK(scaled.exit_code == 0);
}

TEST_CASE("cli triangularize and homogeneous") {
    CliResult tri = run_cli("triangularize " + fixture("split3.hom"));
    CHECK(tri.exit_code == 0);
    CHECK(contains(tri.out, "P = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]"));

    CliResult hom = run_cli("homogeneous " + fixture("split3.hom") + " --diag " +
                            fixture("ident.hom"));
    CHECK(hom.exit_code == 0);
    CHECK(contains(hom.out, "blocks: 2, 1"));
    CHECK(contains(hom.out, "cocycle check (50 pairs): ok"));

    CliResult chain = run_cli("homogeneous " + fixture("onechain.hom") + " --diag " +
                              fixture("ident.hom"));
    CHECK(chain.exit_code == 0);
    CHECK(contains(chain.out, "blocks: 3"));
}

TEST_CASE("cli exit codes for parse errors") {
    std::string bad_path = "/tmp/tsvs_badpoly.field";
    {
        std::ofstream os(bad_path);
        os << "numberfield g: x^2 + y\n";
    }
    CliResult r = run_cli("classify " + bad_path);
    CHECK(r.exit_code == 2);
    CHECK(contains(r.err, "parse error at byte"));
    std::remove(bad_path.c_str());
}

TEST_CASE("cli output is byte-identical across runs") {
    for (const std::string& cmd :
         {"classify " + fixture("cbrt2.field"), "k0 " + fixture("sqrt2.field"),
          "simple " + fixture("cbrt2.field") + " --orbit 2 --basis " + fixture("zeta.basis"),
          "jordan-order " + fixture("good.mat"),
          "homogeneous " + fixture("split3.hom") + " --diag " + fixture("ident.hom")}) {
        CliResult a = run_cli(cmd);
        CliResult b = run_cli(cmd);
        CHECK(a.exit_code == b.exit_code);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("cli json mirrors the text output") {
    CliResult t = run_cli("classify " + fixture("cbrt2.field"));
    CliResult j = run_cli("--format json classify " + fixture("cbrt2.field"));
    CHECK(j.exit_code == 0);
    CHECK(contains(j.out, "\"orbits\""));
    CHECK(contains(j.out, "x^2 + g*x + g^2"));
    // same underlying fields: the factor strings appear in both
    CHECK(contains(t.out, "x^2 + g*x + g^2"));
}

TEST_CASE("fixture files round-trip through parse and print") {
    using namespace tsvs;
    for (std::string name : {"cbrt2.field", "fifthroot2.field", "sqrt2.field",
                                    "gauss.field", "rat.field", "biquad.field"}) {
        std::string text = io::read_file(fixture(name));
        auto fd = io::parse_field_header(text);
        REQUIRE(std::holds_alternative<NumberField>(fd));
        std::string printed = io::field_str(std::get<NumberField>(fd));
        auto fd2 = io::parse_field_header(printed);
        CHECK(std::get<NumberField>(fd2) == std::get<NumberField>(fd));
    }
    for (std::string name : {"cbrt2_simple.hom", "cbrt2_trivial.hom", "bad.mat",
                                    "good.mat", "split3.hom", "ident.hom", "onechain.hom"}) {
        std::string text = io::read_file(fixture(name));
        auto doc = io::parse_matrix_doc(text);
        std::string printed = std::holds_alternative<io::NFMatrixDoc>(doc)
                                  ? io::matrix_doc_str(std::get<io::NFMatrixDoc>(doc).first,
                                                       std::get<io::NFMatrixDoc>(doc).second)
                                  : io::matrix_doc_str(std::get<Matrix<RatFunc>>(doc));
        auto doc2 = io::parse_matrix_doc(printed);
        if (std::holds_alternative<io::NFMatrixDoc>(doc)) {
            CHECK(std::get<io::NFMatrixDoc>(doc2).second == std::get<io::NFMatrixDoc>(doc).second);
        } else {
            CHECK(std::get<Matrix<RatFunc>>(doc2) == std::get<Matrix<RatFunc>>(doc));
        }
    }
    for (std::string name : {"hasse1.hs", "identity.hs", "scaled2.hs"}) {
        std::string text = io::read_file(fixture(name));
        HigherDerivation d = io::parse_hs_doc(text);
        HigherDerivation d2 = io::parse_hs_doc(io::hs_str(d));
        CHECK(d2.order() == d.order());
        for (int l = 1; l <= d.order(); ++l)
            CHECK(d2.tail()[l - 1].op() == d.tail()[l - 1].op());
    }
}

TEST_CASE("cli similar over the function field prints a conjugator") {
    CliResult r = run_cli("similar " + fixture("split3.hom") + " " + fixture("split3.hom"));
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "similar: true"));
    CHECK(contains(r.out, "P = "));
    CliResult r2 = run_cli("similar " + fixture("split3.hom") + " " + fixture("ident.hom"));
    CHECK(r2.exit_code == 0);
    CHECK(contains(r2.out, "similar: false"));
}

TEST_CASE("cli k0-groups") {
    CliResult r = run_cli("k0-groups " + fixture("cbrt2.field"));
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "orbit 1: K(lambda) = K"));
    CHECK(contains(r.out, "orbit 2: K(lambda) = K[X]/(X^2 + g*X + g^2)"));
}

TEST_CASE("cli end on the trivial orbit") {
    CliResult r = run_cli("end " + fixture("cbrt2.field") + " --orbit 1");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "M(1) = [[1]]"));
}

TEST_CASE("cli k0 for a biquadratic field emits the multi-generator presentation") {
    CliResult r = run_cli("k0 " + fixture("biquad.field"));
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out,
                   "Z<x1,x2,x3>/( x1^2 - 1, x1*x2 - x3, x1*x3 - x2, x2^2 - 1, x2*x3 - x1, "
                   "x3^2 - 1 )"));
    CHECK(contains(r.out, "group ring: Z[G], |G| = 4"));
}

TEST_CASE("cli cache-dir is transparent") {
    std::string dir = "/tmp/tsvs_cli_cache";
    int rc = std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str());
    REQUIRE(rc == 0);
    CliResult a = run_cli("--cache-dir " + dir + " classify " + fixture("fifthroot2.field"));
    CliResult b = run_cli("--cache-dir " + dir + " classify " + fixture("fifthroot2.field"));
    CliResult plain = run_cli("classify " + fixture("fifthroot2.field"));
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == plain.out);
    rc = std::system(("rm -rf " + dir).c_str());
    CHECK(rc == 0);
}
