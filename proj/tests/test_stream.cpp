#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "seqshare/cost.hpp"
#include "seqshare/stream.hpp"

using namespace seqshare;

TEST_CASE("stream CSV parsing") {
  std::istringstream in("1,A,g1\n2,B,g1\n");
  Stream s = read_stream(in);
  REQUIRE(s.events.size() == 2);
  CHECK(s.events[0].time == 1);
  CHECK(s.events[0].type == "A");
  CHECK(s.events[0].group == "g1");
  CHECK(s.duration == 3);
}

TEST_CASE("stream CSV accepts an optional header and empty input") {
  std::istringstream with_header("time,type,group\n1,A,g1\n");
  CHECK(read_stream(with_header).events.size() == 1);
  std::istringstream empty("");
  CHECK(read_stream(empty).events.empty());
}

TEST_CASE("stream CSV rejects out-of-order and malformed rows") {
  std::istringstream ooo("2,A\n1,B\n");
  CHECK_THROWS_AS(read_stream(ooo), ParseError);
  std::istringstream bad_time("x,A\n");
  CHECK_THROWS_AS(read_stream(bad_time), ParseError);
  std::istringstream too_few("5\n");
  CHECK_THROWS_AS(read_stream(too_few), ParseError);
}

TEST_CASE("uniform generator emits exactly round(rate*duration) events") {
  GeneratorConfig c;
  c.types = {"A"};
  c.rate = 10;
  c.duration = 10;
  c.seed = 42;
  Stream s = generate_stream(c);
  CHECK(s.events.size() == 100);
  CHECK(s.duration == 10);
}

TEST_CASE("generated groups stay within the configured cardinality") {
  GeneratorConfig c;
  c.types = {"A", "B"};
  c.rate = 20;
  c.duration = 5;
  c.groups = 2;
  c.seed = 1;
  for (const auto& e : generate_stream(c).events)
    CHECK((e.group == "g0" || e.group == "g1"));
}

TEST_CASE("generation is deterministic per seed") {
  GeneratorConfig c;
  c.types = {"A", "B", "C"};
  c.rate = 30;
  c.duration = 20;
  c.groups = 3;
  c.seed = 99;
  Stream a = generate_stream(c);
  Stream b = generate_stream(c);
  std::ostringstream sa, sb;
  write_stream(a, sa);
  write_stream(b, sb);
  CHECK(sa.str() == sb.str());
  c.seed = 100;
  std::ostringstream sc;
  write_stream(generate_stream(c), sc);
  CHECK(sa.str() != sc.str());
}

TEST_CASE("write/read round trip preserves the events") {
  GeneratorConfig c;
  c.types = {"A", "B"};
  c.rate = 15;
  c.duration = 12;
  c.groups = 2;
  c.seed = 5;
  Stream orig = generate_stream(c);
  std::ostringstream out;
  write_stream(orig, out);
  std::istringstream in(out.str());
  Stream back = read_stream(in);
  REQUIRE(back.events.size() == orig.events.size());
  for (std::size_t i = 0; i < orig.events.size(); ++i) {
    CHECK(back.events[i].time == orig.events[i].time);
    CHECK(back.events[i].type == orig.events[i].type);
    CHECK(back.events[i].group == orig.events[i].group);
  }
}

TEST_CASE("estimate_rates recovers configured per-window rates within 5%") {
  GeneratorConfig c;
  c.types = {"A", "B", "C", "D"};
  c.rate = 40;
  c.duration = 120;
  c.seed = 7;
  c.type_weights = {0.4, 0.3, 0.2, 0.1};
  Stream s = generate_stream(c);
  WindowSpec w{30, 10};
  RateTable rates = estimate_rates(s, w);
  for (std::size_t i = 0; i < c.types.size(); ++i) {
    double expected = c.rate * c.type_weights[i] * w.within;
    CHECK(std::abs(rates.at(c.types[i]) - expected) <= 0.05 * expected);
  }
}

TEST_CASE("poisson mode stays deterministic and roughly on rate") {
  GeneratorConfig c;
  c.types = {"A"};
  c.rate = 10;
  c.duration = 100;
  c.seed = 13;
  c.poisson = true;
  Stream a = generate_stream(c);
  Stream b = generate_stream(c);
  REQUIRE(a.events.size() == b.events.size());
  double n = static_cast<double>(a.events.size());
  CHECK(n > 700);
  CHECK(n < 1300);
}

TEST_CASE("generator validates its configuration") {
  GeneratorConfig c;
  CHECK_THROWS_AS(generate_stream(c), std::invalid_argument);  // no types
  c.types = {"A"};
  c.rate = 0;
  CHECK_THROWS_AS(generate_stream(c), std::invalid_argument);
  c.rate = 1;
  c.duration = 0;
  CHECK_THROWS_AS(generate_stream(c), std::invalid_argument);
}
