#include <sstream>

#include "doctest.h"
#include "warm/error.hpp"
#include "warm/io.hpp"

using namespace warm;

TEST_CASE("format_double round-trips") {
  Rng rng(1);
  for (int i = 0; i < 2000; ++i) {
    const double x = std::ldexp(rng.uniform01(), static_cast<int>(rng.below(80)) - 40);
    CHECK(io::parse_double(io::format_double(x)) == x);
  }
  CHECK(io::format_double(100.0) == "100");
  CHECK(io::format_double(0.5) == "0.5");
  CHECK_THROWS_AS(io::parse_double("1.0x"), Error);
}

TEST_CASE("snapshot CSV round-trip") {
  const Graph g = build_torus(2, 3);
  Simulator sim(g, {0.4, 64, 5, dyadic_schedule(0.75, 2, 64), false, false});
  sim.run();
  std::ostringstream os;
  io::write_snapshots_csv(os, sim.series());
  const std::string text = os.str();
  CHECK(text.rfind("t,edge_id,weight,x\n", 0) == 0);
  const auto back = io::read_snapshots_csv(text);
  CHECK(back == sim.series());

  std::ostringstream again;
  io::write_snapshots_csv(again, back);
  CHECK(again.str() == text);
}

TEST_CASE("snapshot CSV errors") {
  CHECK_THROWS_AS(io::read_snapshots_csv(""), Error);
  CHECK_THROWS_AS(io::read_snapshots_csv("t,edge,weight,x\n"), Error);
  CHECK_THROWS_AS(io::read_snapshots_csv("t,edge_id,weight,x\n1,1,2,2\n"), Error);
  CHECK_THROWS_AS(io::read_snapshots_csv("t,edge_id,weight,x\n1,0,2\n"), Error);
  CHECK_THROWS_AS(io::read_snapshots_csv("t,edge_id,weight,x\n2,0,2,1\n1,0,2,2\n"), Error);
}

TEST_CASE("equilibrium CSV") {
  const std::vector<double> mu{1.5, 0.3333333333333333, 2};
  std::ostringstream os;
  io::write_mu_csv(os, mu);
  CHECK(os.str() == "edge_id,mu\n0,1.5\n1,0.3333333333333333\n2,2\n");
  CHECK(io::read_mu_csv(os.str()) == mu);
  CHECK_THROWS_AS(io::read_mu_csv("edge_id,mu\n1,1.0\n"), Error);
  CHECK_THROWS_AS(io::read_mu_csv("mu\n"), Error);
}

TEST_CASE("deviation CSV") {
  std::ostringstream os;
  const std::vector<double> t{100, 200};
  const std::vector<double> d{0.25, 0.125};
  io::write_deviation_csv(os, t, d);
  CHECK(os.str() == "t,sup_deviation\n100,0.25\n200,0.125\n");
}

TEST_CASE("graph summary") {
  const auto s = io::graph_summary(build_torus(2, 20));
  CHECK(s["vertex_count"] == 400);
  CHECK(s["edge_count"] == 800);
  CHECK(s["max_degree"] == 4);
  CHECK(s["regular"] == true);
  CHECK(io::graph_summary(build_star(3))["regular"] == false);
}

TEST_CASE("checkpoint JSON resumes bit-identically") {
  const Graph g = build_random_regular(24, 3, 4);
  SimConfig cfg{0.35, 400, 21, dyadic_schedule(1, 2, 400), false, false};
  Simulator whole(g, cfg);
  whole.run();

  Simulator part(g, cfg);
  part.run_until(100.5);
  const std::string text = io::checkpoint_to_json(part.checkpoint()).dump();
  const auto cp = io::checkpoint_from_json(nlohmann::json::parse(text));
  CHECK(cp.state == part.state());
  CHECK(cp.next_event_time == part.next_event_time());

  Simulator rest = Simulator::resume(g, cp);
  rest.run();
  CHECK(rest.series() == whole.series());
  CHECK(rest.state() == whole.state());

  auto bad = nlohmann::json::parse(text);
  bad["version"] = 99;
  CHECK_THROWS_AS(io::checkpoint_from_json(bad), Error);
  bad = nlohmann::json::parse(text);
  bad.erase("weights");
  CHECK_THROWS_AS(io::checkpoint_from_json(bad), Error);
}

TEST_CASE("file helpers report I/O failures") {
  try {
    io::read_file("/nonexistent/dir/file.txt");
    FAIL("expected I/O error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kIo);
  }
  CHECK_THROWS_AS(io::write_file("/nonexistent/dir/file.txt", "x"), Error);
}
