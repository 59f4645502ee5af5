#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <unistd.h>

#include "gradim/cli.hpp"
#include "gradim/gallery.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = gradim::cli_main(args, out, err);
    return {code, out.str(), err.str()};
}

std::string example(const std::string& name)
{
    return std::string(GRADIM_DATA_DIR) + "/examples/" + name;
}

class TempDir {
public:
    TempDir() : path_(fs::temp_directory_path() / ("gradim-cli-" + std::to_string(::getpid())))
    {
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }

    std::string write(const std::string& name, const std::string& text) const
    {
        const fs::path p = path_ / name;
        std::ofstream(p) << text;
        return p.string();
    }

private:
    fs::path path_;
};

std::map<std::string, std::string> machine_fields(const std::string& text)
{
    std::map<std::string, std::string> m;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (auto eq = line.find('='); eq != std::string::npos)
            m[line.substr(0, eq)] = line.substr(eq + 1);
    return m;
}

} // namespace

TEST_CASE("partition prints p(0..N)")
{
    const Run r = run({"partition", "-N", "6"});
    CHECK(r.code == 0);
    CHECK(r.out == "1 1 2 3 5 7 11\n");
}

TEST_CASE("gallery all passes every case")
{
    const Run r = run({"gallery", "all"});
    CHECK(r.code == 0);
    std::size_t pass = 0;
    std::istringstream in(r.out);
    std::string line;
    while (std::getline(in, line))
        pass += line.rfind("PASS ", 0) == 0;
    CHECK(pass == gradim::gallery_ids().size());
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("gallery rejects unknown ids with usage status")
{
    const Run r = run({"gallery", "ex-0"});
    CHECK(r.code == 2);
    CHECK(r.err.find("ex-6.6") != std::string::npos);
}

TEST_CASE("gallery accepts a sequence override")
{
    const Run r = run({"--format", "machine", "gallery", "ex-6.3", "-N", "20", "--sequence", "1", "0", "0"});
    CHECK(r.code == 0);
    const auto m = machine_fields(r.out);
    CHECK(m.at("krull_dim") == "0");
    CHECK(m.at("pole_order") == "0");
    CHECK(m.at("numerator") == "1");
    CHECK(m.at("result") == "pass");
}

TEST_CASE("dim reports equal dimensions for the polynomial ring")
{
    const Run r = run({"dim", example("cube.monoid"), "--format", "machine"});
    CHECK(r.code == 0);
    const auto m = machine_fields(r.out);
    CHECK(m.at("krull_dim") == "3");
    CHECK(m.at("trdeg") == "3");
    CHECK(m.at("pole_order") == "3");
    CHECK(m.at("all_equal") == "yes");
    CHECK(m.at("gk_status") == "within-tolerance");
}

TEST_CASE("hilbert counts monomials")
{
    const Run r = run({"hilbert", example("cube.monoid"), "-N", "4"});
    CHECK(r.code == 0);
    CHECK(r.out == "1 3 6 10 15\n");
}

TEST_CASE("sagbi finds an unbounded initial algebra")
{
    const Run r = run({"sagbi", example("non-fg-initial.sub"), "-D", "6", "--format", "machine"});
    CHECK(r.code == 0);
    const auto m = machine_fields(r.out);
    CHECK(m.at("generators") == "x, x*y, x*y^2, x*y^3, x*y^4, x*y^5");
    CHECK(m.at("stabilized") == "no");
    CHECK(m.at("poincare_equal") == "yes");
}

TEST_CASE("classify emits stable machine keys")
{
    const Run a = run({"classify", example("squares.series"), "--format=machine"});
    CHECK(a.code == 0);
    const auto m = machine_fields(a.out);
    for (const char* key : {"verdict", "reason", "pole_order", "numerator", "denominator", "radius_estimate", "evidence"})
        CHECK(m.count(key) == 1);
    CHECK(m.at("verdict") == "HilbertSerre");
    CHECK(m.at("numerator") == "t + 1");
    CHECK(m.at("denominator") == "(1 - t)^3");

    const auto e = machine_fields(run({"classify", example("exponential.series"), "--format=machine"}).out);
    CHECK(e.at("verdict") == "NotHilbertSerre");
    CHECK(e.at("reason") == "radius");
}

TEST_CASE("fit exits 1 when the denominator does not fit")
{
    CHECK(run({"fit", example("squares.series"), "--denom", "1,1,1"}).code == 0);
    const Run r = run({"fit", example("exponential.series"), "--denom", "1,1"});
    CHECK(r.code == 1);
    CHECK(r.out.find("none") != std::string::npos);
}

TEST_CASE("malformed input exits 2 with a position")
{
    TempDir tmp;
    const std::string bad = tmp.write("bad.monoid", "vars: x y\nx*y\nx^^2\n");
    const Run r = run({"hilbert", bad});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 3, column 3") != std::string::npos);

    const std::string short_series = tmp.write("short.series", "1\n2\n3\n");
    CHECK(run({"fit", short_series, "--denom", "1,1"}).code == 2);

    const std::string junk = tmp.write("junk.series", "1\n2 x\n");
    const Run j = run({"classify", junk});
    CHECK(j.code == 2);
    CHECK(j.err.find("line 2") != std::string::npos);

    CHECK(run({"hilbert", (fs::path(tmp.write("x", "")).parent_path() / "missing.monoid").string()}).code == 2);
}

TEST_CASE("bad usage exits 2")
{
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"partition"}).code == 2);
    CHECK(run({"--format", "xml", "partition", "-N", "3"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("proptest is reproducible from its seed")
{
    const Run a = run({"proptest", "--seed", "7", "--count", "40", "--format", "machine"});
    const Run b = run({"proptest", "--seed", "7", "--count", "40", "--format", "machine"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}
