#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "replywatch/errors.hpp"
#include "replywatch/report_io.hpp"

using namespace replywatch;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("replywatch_report_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("report_io") {
  TEST_CASE("fixed6") {
    CHECK(fixed6(0.0) == "0.000000");
    CHECK(fixed6(-0.0) == "0.000000");
    CHECK(fixed6(-1e-9) == "0.000000");
    CHECK(fixed6(2.0 / 3.0) == "0.666667");
    CHECK(fixed6(1.125) == "1.125000");
    CHECK(fixed6(-3.5) == "-3.500000");
    CHECK(fixed6(12345678.9) == "12345678.900000");
  }

  TEST_CASE("atomic writes") {
    const auto dir = scratch("atomic");
    write_atomic(dir / "a.csv", "x\n1\n");
    CHECK(slurp(dir / "a.csv") == "x\n1\n");
    write_atomic(dir / "a.csv", "y\n");
    CHECK(slurp(dir / "a.csv") == "y\n");
    {
      AtomicFile f(dir / "b.csv");
      f.write("partial");
      CHECK_FALSE(fs::exists(dir / "b.csv"));
    }
    CHECK_FALSE(fs::exists(dir / "b.csv"));
    {
      AtomicFile f(dir / "c.csv");
      f.write("done\n");
      f.commit();
    }
    CHECK(slurp(dir / "c.csv") == "done\n");
    std::size_t entries = 0;
    for (const auto& e : fs::directory_iterator(dir)) {
      (void)e;
      ++entries;
    }
    CHECK(entries == 2);
    CHECK_THROWS_AS(write_atomic(dir / "missing" / "a.csv", "x"), OutputError);
  }

  TEST_CASE("csv documents") {
    CHECK(csv_document({"a", "b"}, {}) == "a,b\n");
    CHECK(csv_document({"a", "b"}, {{"1", "x,y"}}) == "a,b\n1,\"x,y\"\n");
    CHECK(eval_report_csv(make_report(1, 0, 1, 0)) ==
          "tp,fp,tn,fn,accuracy,precision,recall,f1\n1,0,1,0,1.000000,1.000000,1.000000,1.000000\n");
  }

  TEST_CASE("focus rows carry calendar dates") {
    FocusResult f;
    f.window_start = 1;
    f.window_end = 3;
    f.focus = 0.75;
    f.normalized_focus = 1.125;
    const std::vector<MPWindow> rows{{"a", f}, {"b", std::nullopt}};
    CHECK(focus_csv(rows, parse_date("2019-01-31")) ==
          "handle,window_start,window_end,focus,normalized_focus\n"
          "a,2019-02-01,2019-02-03,0.750000,1.125000\n"
          "b,,,,\n");
  }
}
