#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "wmodk/io.hpp"
#include "wmodk/sampler.hpp"

using namespace wmodk;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& text) {
    static int counter = 0;
    path = (std::filesystem::temp_directory_path() /
            ("wmodk_io_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++) + ".txt"))
               .string();
    std::ofstream out(path);
    out << text;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

std::string data_dir() {
  if (const char* env = std::getenv("WMODK_DATA")) return env;
  return "data";
}

}  // namespace

TEST_CASE("edge list parsing") {
  SUBCASE("weights and node table in first-appearance order") {
    TempFile f("a b 2\nb c -1\n");
    EdgeListDocument doc = read_edge_list(f.path);
    CHECK(doc.node_ids == std::vector<std::string>{"a", "b", "c"});
    REQUIRE(doc.adjacency.rows() == 3);
    CHECK(doc.adjacency(0, 1) == 2.0);
    CHECK(doc.adjacency(1, 0) == 2.0);
    CHECK(doc.adjacency(1, 2) == -1.0);
    CHECK(doc.adjacency(0, 2) == 0.0);
    CHECK(doc.adjacency(0, 0) == 0.0);
  }

  SUBCASE("default weight 1 and duplicate sum") {
    TempFile f("a b\na b\n");
    EdgeListDocument doc = read_edge_list(f.path);
    CHECK(doc.adjacency(0, 1) == 2.0);
  }

  SUBCASE("duplicate policy error") {
    TempFile f("a b\na b\n");
    EdgeListOptions opts;
    opts.duplicate_policy = DuplicatePolicy::error;
    CHECK_THROWS_AS(read_edge_list(f.path, opts), ParseError);
  }

  SUBCASE("comments and blank lines are skipped") {
    TempFile f("# header\n\na b 3 # trailing\n");
    EdgeListDocument doc = read_edge_list(f.path);
    CHECK(doc.adjacency(0, 1) == 3.0);
  }

  SUBCASE("mirror mode accepts agreeing reverse records") {
    TempFile f("a b 2\nb a 2\n");
    EdgeListDocument doc = read_edge_list(f.path);
    CHECK(doc.adjacency(0, 1) == 2.0);
  }

  SUBCASE("mirror mode rejects conflicting reverse records") {
    TempFile f("a b 2\nb a 3\n");
    CHECK_THROWS_WITH_AS(read_edge_list(f.path),
                         doctest::Contains("conflicting"), ParseError);
  }

  SUBCASE("average mode") {
    TempFile f("a b 2\nb a 3\n");
    EdgeListOptions opts;
    opts.symmetrize = SymmetrizePolicy::average;
    EdgeListDocument doc = read_edge_list(f.path, opts);
    CHECK(doc.adjacency(0, 1) == 2.5);
  }

  SUBCASE("malformed lines carry the line number") {
    TempFile f("a b 1\nx\n");
    CHECK_THROWS_WITH_AS(read_edge_list(f.path), doctest::Contains("line 2"),
                         ParseError);
    TempFile g("a b one\n");
    CHECK_THROWS_AS(read_edge_list(g.path), ParseError);
  }

  SUBCASE("self-loops parse onto the diagonal") {
    TempFile f("a a 4\na b 1\n");
    EdgeListDocument doc = read_edge_list(f.path);
    CHECK(doc.adjacency(0, 0) == 4.0);
  }

  SUBCASE("explicit delimiter") {
    TempFile f("a,b,2.5\nb,c,-1\n");
    EdgeListOptions opts;
    opts.delimiter = ',';
    EdgeListDocument doc = read_edge_list(f.path, opts);
    CHECK(doc.adjacency(0, 1) == 2.5);
    CHECK(doc.adjacency(1, 2) == -1.0);
  }
}

TEST_CASE("bundled karate edge list") {
  std::string path = data_dir() + "/karate.txt";
  REQUIRE_MESSAGE(std::filesystem::exists(path),
                  "run from the repo root or set WMODK_DATA");
  EdgeListDocument doc = read_edge_list(path);
  CHECK(doc.adjacency.rows() == 34);
  // 78 unweighted edges: total positive weight 2m+ = 156, no negative part
  CHECK(doc.adjacency.sum() == 156.0);
  CHECK(doc.adjacency.minCoeff() == 0.0);
}

TEST_CASE("matrix round-trip") {
  SUBCASE("signed 2x2") {
    Matrix a(2, 2);
    a << 0.1, -2.25, -2.25, 7.0;
    TempFile f("");
    write_matrix(f.path, a);
    Matrix b = read_matrix(f.path);
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);

    // identical decimal rendering on rewrite
    std::string first, second;
    {
      std::ifstream in(f.path);
      first.assign(std::istreambuf_iterator<char>(in), {});
    }
    write_matrix(f.path, b);
    {
      std::ifstream in(f.path);
      second.assign(std::istreambuf_iterator<char>(in), {});
    }
    CHECK(first == second);
  }

  SUBCASE("n = 0 rejected") {
    TempFile f("0\n");
    CHECK_THROWS_AS(read_matrix(f.path), ParseError);
  }

  SUBCASE("dimension mismatch flagged") {
    TempFile f("3\n1 2 3\n4 5\n");
    CHECK_THROWS_AS(read_matrix(f.path), ParseError);
  }

  SUBCASE("random poisson matrices survive exactly") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      Matrix omega = Matrix::Constant(50, 50, 1.5);
      Matrix a = sample_adjacency(omega, {Family::poisson}, seed);
      TempFile f("");
      write_matrix(f.path, a);
      CHECK((read_matrix(f.path) - a).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("read_network format detection") {
  TempFile m("2\n0 1\n1 0\n");
  Matrix a = read_network(m.path, InputFormat::automatic);
  CHECK(a.rows() == 2);
  CHECK(a(0, 1) == 1.0);

  TempFile e("7 9 2.5\n9 8 1\n");
  std::vector<std::string> ids;
  Matrix b = read_network(e.path, InputFormat::automatic, &ids);
  CHECK(b.rows() == 3);
  CHECK(ids == std::vector<std::string>{"7", "9", "8"});
}
