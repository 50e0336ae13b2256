#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int code;
    std::string output;
};

// runs the command-line tool with stderr folded into the captured output
Run run(const std::string& args) {
    const std::string cmd = std::string(VACLINE_CLI) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::fgets(buf, sizeof buf, pipe)) out += buf;
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string temp_path(const std::string& name) { return std::string(VACLINE_TMP) + "/" + name; }

}  // namespace

TEST_CASE("eval prints labelled quantities") {
    const auto r = run("eval");
    CHECK(r.code == 0);
    CHECK(r.output.find("var_H            analytic     2.397964") != std::string::npos);
    CHECK(r.output.find("var_H            quadrature   2.397964") != std::string::npos);
    CHECK(r.output.find("var_P            quadrature   2.397964") != std::string::npos);
}

TEST_CASE("eval with zero pulse energy") {
    const auto r = run("eval --E0 0");
    CHECK(r.code == 0);
    CHECK(r.output.find("var_H            analytic     0\n") != std::string::npos);
    CHECK(r.output.find("var_H            quadrature   0\n") != std::string::npos);
}

TEST_CASE("configuration errors exit with code 2") {
    const std::string path = temp_path("malformed.cfg");
    std::ofstream(path) << "sigma = 1\nomega_x = 2\n";
    auto r = run("eval --config " + path);
    CHECK(r.code == 2);
    CHECK(r.output.find("omega_x") != std::string::npos);

    r = run("eval --sigma -3");
    CHECK(r.code == 2);
    CHECK(r.output.find("sigma") != std::string::npos);

    r = run("sweep --axis sigma --min 1 --max 2");
    CHECK(r.code == 2);
    r = run("frobnicate");
    CHECK(r.code == 2);
}

TEST_CASE("config file values are overridden by flags") {
    const std::string path = temp_path("p1.cfg");
    std::ofstream(path) << "E0 = 0\n";
    CHECK(run("eval --config " + path).output.find("var_H            analytic     0\n") != std::string::npos);
    CHECK(run("eval --config " + path + " --E0 1").output.find("2.397964") != std::string::npos);
}

TEST_CASE("sweep writes CSV, JSON and SVG") {
    const std::string csv = temp_path("sigma.csv"), svg = temp_path("sigma.svg"), json = temp_path("sigma.json");
    const auto r = run("sweep --axis sigma --min 0.1 --max 4 --points 200 --jobs 4 --csv " + csv + " --svg " + svg +
                       " --json " + json);
    CHECK(r.code == 0);
    CHECK(r.output.find("peak: argmax") != std::string::npos);
    std::ifstream in(csv);
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == 201);
    CHECK(std::ifstream(svg).good());
    CHECK(std::ifstream(json).good());
}

TEST_CASE("sweep output is deterministic") {
    const auto a = run("sweep --axis omega_e --min 0.5 --max 2 --points 9 --jobs 1");
    const auto b = run("sweep --axis omega_e --min 0.5 --max 2 --points 9 --jobs 5");
    CHECK(a.code == 0);
    CHECK(a.output == b.output);
}

TEST_CASE("failing sweep flushes rows and an error trailer") {
    const auto r = run("sweep --axis dx --min 0.04 --max 3 --points 4 --scenario lattice --jobs 2");
    CHECK((r.code == 2 || r.code == 3));
    CHECK(r.output.find("# error:") != std::string::npos);
    CHECK(r.output.find("dx,H_c") != std::string::npos);
}

TEST_CASE("converge refuses bad ladders and Courant numbers") {
    CHECK(run("converge --dx 0.04").code == 2);
    CHECK(run("converge --dx 0.04,0.03,0.01").code == 2);
    const auto r = run("converge --cfl 0.95");
    CHECK(r.code == 2);
    CHECK(r.output.find("Courant") != std::string::npos);
}

TEST_CASE("converge reports second order") {
    const auto r = run("converge --check");
    CHECK(r.code == 0);
    CHECK(r.output.find("CONVERGED") != std::string::npos);
    CHECK(r.output.find("NOT CONVERGED") == std::string::npos);
}
