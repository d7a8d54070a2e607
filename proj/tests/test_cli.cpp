#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "ltlsn/cli.hpp"
#include "support.hpp"

using ltlsn::cli::CommandResult;
using ltlsn::cli::run;
using ltlsn::testing::data_path;

namespace {

std::string temp_model(const std::string& name, const std::string& text)
{
  auto path = std::filesystem::temp_directory_path() / ("ltlsn_cli_" + name + ".sn");
  std::ofstream(path, std::ios::binary) << text;
  return path.string();
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("trace prints the diffusion path byte for byte")
{
  CommandResult r = run({"trace", data_path("fig1.sn")});
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text ==
        "0: {a}\n1: {a,c}\n2: {a,c,e}\n3: {a,b,c,e,f}\n4: {a,b,c,d,e,f}\nfixed point at i=4\n");
  CHECK(r.stderr_text.empty());

  CommandResult r2 = run({"trace", data_path("fig2.sn")});
  CHECK(r2.stdout_text == "0: {a}\n1: {a,c}\nfixed point at i=1\n");
}

TEST_CASE("check reports the satisfaction set and exit status")
{
  CommandResult holds = run({"check", data_path("fig2.sn"), "G !B(d)"});
  CHECK(holds.exit_code == 0);
  CHECK(holds.stdout_text == "S = {0,1} (+tail)\nholds at 0: yes\n");

  CommandResult fails = run({"check", data_path("fig1.sn"), "G !B(d)"});
  CHECK(fails.exit_code == 1);
  CHECK(fails.stdout_text == "S = {}\nholds at 0: no\n");

  CommandResult f = run({"check", data_path("fig1.sn"), "F B(d)"});
  CHECK(f.exit_code == 0);
  CHECK(f.stdout_text == "S = {0,1,2,3,4} (+tail)\nholds at 0: yes\n");
}

TEST_CASE("validate")
{
  CommandResult ok = run({"validate", data_path("fig1.sn")});
  CHECK(ok.exit_code == 0);
  CHECK(ok.stdout_text ==
        "agents: 6\ntheta: 1/3 (>=)\nirreflexivity: ok\nsymmetry: ok\nseriality: ok\nvalid\n");

  std::string loop = temp_model("loop", "agents a b c\ntheta 1/2\nedge a b\nedge a a\ninitial a\n");
  CommandResult bad = run({"validate", loop});
  CHECK(bad.exit_code == 3);
  CHECK(bad.stdout_text ==
        "agents: 3\ntheta: 1/2 (>=)\nirreflexivity: violated by a\nsymmetry: ok\n"
        "seriality: violated by c\ninvalid (2 violations)\n");

  // Other commands refuse the model outright.
  CommandResult tr = run({"trace", loop});
  CHECK(tr.exit_code == 3);
  CHECK(tr.stdout_text.empty());
  CHECK(tr.stderr_text.rfind("error: ", 0) == 0);
}

TEST_CASE("usage and parse errors exit with 2")
{
  CHECK(run({}).exit_code == 2);
  CHECK(run({"frobnicate"}).exit_code == 2);
  CHECK(run({"check", data_path("fig1.sn")}).exit_code == 2);
  CHECK(run({"trace", data_path("missing.sn")}).exit_code == 2);

  std::string broken = temp_model("broken", "agents a b\ntheta 1/2\nedge a q\ninitial a\n");
  CommandResult r = run({"trace", broken});
  CHECK(r.exit_code == 2);
  CHECK(r.stderr_text.find("line 3, column 8") != std::string::npos);

  CommandResult syntax = run({"check", data_path("fig1.sn"), "B(a) &"});
  CHECK(syntax.exit_code == 2);
  CHECK(syntax.stderr_text.find("column 7") != std::string::npos);

  CommandResult unknown = run({"check", data_path("fig1.sn"), "B(zz)"});
  CHECK(unknown.exit_code == 2);
  CHECK(unknown.stderr_text.find("zz") != std::string::npos);
}

TEST_CASE("help exits cleanly")
{
  CommandResult r = run({"--help"});
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("xcheck") != std::string::npos);
}

TEST_CASE("translate")
{
  CommandResult r = run({"translate", data_path("fig1.sn"), "X B(a)"});
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text == "!(!B(a) & !MAJ(a))\n");

  CHECK(run({"translate", data_path("fig1.sn"), "X N(a,c)"}).stdout_text == "N(a,c)\n");

  std::string pair = temp_model("pair", "agents a b\ntheta 1/2\nedge a b\ninitial a\n");
  CommandResult expanded = run({"translate", pair, "X B(b)", "--expand-majority"});
  CHECK(expanded.exit_code == 0);
  CHECK(expanded.stdout_text.find("MAJ") == std::string::npos);
  CHECK(expanded.stdout_text.find("N(b,a)") != std::string::npos);

  CommandResult limited =
    run({"translate", data_path("fig1.sn"), "X B(a)", "--expand-majority", "--majority-limit", "3"});
  CHECK(limited.exit_code == 2);
}

TEST_CASE("xcheck compares the three engines")
{
  CommandResult r = run({"xcheck", data_path("fig1.sn"), "!(B(d) & B(e) & B(f)) U B(d)"});
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text ==
        "semantics:   S = {0,1,2,3,4} (+tail)\n"
        "labeling:    S = {0,1,2,3,4} (+tail)\n"
        "translation: S = {0,1,2,3,4} (+tail)\n"
        "engines agree: yes\n"
        "holds at 0: yes\n");

  CommandResult no = run({"xcheck", data_path("fig2.sn"), "F B(d)"});
  CHECK(no.exit_code == 1);
  CHECK(no.stdout_text.find("engines agree: yes\n") != std::string::npos);
}

}
