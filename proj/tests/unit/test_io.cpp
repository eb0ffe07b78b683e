#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "cvqe/error.hpp"
#include "cvqe/io.hpp"
#include "fixtures.hpp"

using namespace cvqe;

namespace {

Hamiltonian parse(const std::string& text) {
  std::istringstream in(text);
  return io::read_hamiltonian(in);
}

std::filesystem::path temp_dir() {
  auto p = std::filesystem::temp_directory_path() / ("cvqe_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST(ReadHamiltonian, HubbardFile) {
  const auto h = parse(R"({"modes": ["0u", "0d", "1u", "1d"]}
{"coeff": -0.158, "create": ["0u"], "annihilate": ["1u"]}

{"coeff": [-0.158, 0], "create": ["1u"], "annihilate": ["0u"]}
{"coeff": -0.158, "create": ["0d"], "annihilate": ["1d"]}
{"coeff": -0.158, "create": ["1d"], "annihilate": ["0d"]}
{"coeff": 1, "create": ["0u", "0d"], "annihilate": ["0d", "0u"]}
{"coeff": 1, "create": ["1u", "1d"], "annihilate": ["1d", "1u"]}
)");
  const auto ref = fixtures::hubbard();
  ASSERT_EQ(h.terms().size(), ref.terms().size());
  EXPECT_EQ(h.indexing(), ref.indexing());
  for (std::size_t i = 0; i < h.terms().size(); ++i) EXPECT_EQ(h.terms()[i], ref.terms()[i]);
}

TEST(ReadHamiltonian, WrittenOrderCarriesSign) {
  const auto h = parse(R"({"modes": ["a", "b"]}
{"coeff": [0.5, 0.25], "create": ["b", "a"], "annihilate": ["b", "a"]}
)");
  ASSERT_EQ(h.terms().size(), 1u);
  EXPECT_EQ(h.terms()[0].coeff, Complex(-0.5, -0.25));
}

TEST(ReadHamiltonian, ReportsLineNumbers) {
  try {
    parse("{\"modes\": [\"a\", \"b\"]}\n{\"coeff\": 1, \"create\": [\"c\"], \"annihilate\": [\"a\"]}\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse(""), Error);
  EXPECT_THROW(parse("{\"coeff\": 1, \"create\": [], \"annihilate\": []}\n"), Error);
  EXPECT_THROW(parse("{\"modes\": [\"a\"]}\n{\"create\": [\"a\"], \"annihilate\": [\"a\"]}\n"), Error);
  EXPECT_THROW(parse("{\"modes\": [\"a\"]}\n{\"coeff\": \"x\", \"create\": [\"a\"], \"annihilate\": [\"a\"]}\n"), Error);
  EXPECT_THROW(parse("{\"modes\": [\"a\"]}\nnot json\n"), Error);
  EXPECT_THROW(parse("{\"modes\": [\"a\", \"a\"]}\n"), Error);
  EXPECT_THROW(io::load_hamiltonian("/nonexistent/h.jsonl"), Error);
}

TEST(WriteHamiltonian, RoundTripsRandomHamiltonians) {
  std::mt19937_64 rng(3);
  for (std::size_t q = 2; q <= 6; ++q) {
    const auto h = fixtures::random_hamiltonian(q, rng);
    std::stringstream ss;
    io::write_hamiltonian(ss, h);
    const auto back = io::read_hamiltonian(ss);
    ASSERT_EQ(back.terms().size(), h.terms().size());
    EXPECT_EQ(back.indexing(), h.indexing());
    for (std::size_t i = 0; i < h.terms().size(); ++i) EXPECT_EQ(back.terms()[i], h.terms()[i]);
  }
}

TEST(Circuit, JsonRoundTrip) {
  std::mt19937_64 rng(9);
  const auto c = fixtures::random_circuit(4, 25, rng);
  const auto back = io::circuit_from_json(io::circuit_to_json(c));
  EXPECT_EQ(back.qubits, c.qubits);
  EXPECT_EQ(back.gates, c.gates);

  const auto parsed = io::circuit_from_json(R"({"qubits": 2, "gates": [{"gate": "H", "target": 0},
      {"gate": "CX", "control": 0, "target": 1}]})");
  ASSERT_EQ(parsed.gates.size(), 2u);
  EXPECT_EQ(parsed.gates[1], (GateOp{GateKind::CX, 1, 0}));
}

TEST(Circuit, RejectsBadDocuments) {
  EXPECT_THROW(io::circuit_from_json(R"({"qubits": 2, "gates": [{"gate": "T", "target": 0}]})"), Error);
  EXPECT_THROW(io::circuit_from_json(R"({"qubits": 2, "gates": [{"gate": "H", "target": 3}]})"), Error);
  EXPECT_THROW(io::circuit_from_json(R"({"gates": []})"), Error);
  EXPECT_THROW(io::circuit_from_json("{"), Error);
}

TEST(SampleSetJson, RoundTrip) {
  const auto state = prepare_initial_state(fixtures::uniform_circuit(3));
  auto shot = sample(state, 1000, 4);
  shot.circuit_key = "baseline";
  EXPECT_EQ(io::sampleset_from_json(io::sampleset_to_json(shot)), shot);

  auto exact = exact_sampleset(state);
  exact.circuit_key = "m0,m1:xy";
  EXPECT_EQ(io::sampleset_from_json(io::sampleset_to_json(exact)), exact);

  EXPECT_THROW(io::sampleset_from_json(
                   R"({"circuit_key": "k", "mode": "exact", "qubits": 2, "S": 1, "entries": [["011", 1.0]]})"),
               Error);
  EXPECT_THROW(io::sampleset_from_json(
                   R"({"circuit_key": "k", "mode": "exact", "qubits": 2, "S": 1, "entries": [["01", -1.0]]})"),
               Error);
}

TEST(Archive, RoundTripsThroughFile) {
  const auto b = fixtures::make_bundle(fixtures::hubbard(), fixtures::uniform_circuit(4), bloch_singlet_hubbard(),
                                       SampleMode::Shot, 500, 77);
  auto archive = b.archive;
  archive.plan_hash = "0123456789abcdef";
  archive.modes = fixtures::hubbard_indexing().labels();
  const auto path = temp_dir() / "nested" / "archive.json";
  io::save_archive(path, archive);
  const auto back = io::load_archive(path);
  EXPECT_EQ(back.mode, archive.mode);
  EXPECT_EQ(back.shots, archive.shots);
  EXPECT_EQ(back.master_seed, archive.master_seed);
  EXPECT_EQ(back.plan_hash, archive.plan_hash);
  EXPECT_EQ(back.modes, archive.modes);
  EXPECT_EQ(back.sets, archive.sets);
  std::filesystem::remove_all(path.parent_path().parent_path());
}

TEST(Archive, ExactWeightsSurviveBitForBit) {
  std::mt19937_64 rng(5);
  const auto b = fixtures::make_bundle(fixtures::hubbard(), fixtures::random_circuit(4, 30, rng),
                                       bloch_singlet_hubbard());
  EXPECT_EQ(io::archive_from_json(io::archive_to_json(b.archive)).sets, b.archive.sets);
}

TEST(Archive, RejectsForeignDocuments) {
  EXPECT_THROW(io::archive_from_json(R"({"circuits": []})"), Error);
  EXPECT_THROW(io::archive_from_json("[]"), Error);
  const std::string dup = R"({"format": "cvqe-archive", "version": 1, "mode": "exact", "S": 1, "master_seed": 0,
    "plan_hash": "", "modes": ["a"], "circuits": [
      {"circuit_key": "baseline", "mode": "exact", "qubits": 1, "S": 1, "entries": [["0", 1.0]]},
      {"circuit_key": "baseline", "mode": "exact", "qubits": 1, "S": 1, "entries": [["0", 1.0]]}]})";
  EXPECT_THROW(io::archive_from_json(dup), Error);
  EXPECT_THROW(io::load_archive("/nonexistent/archive.json"), Error);
}

TEST(TraceCsv, HeaderAndRows) {
  OptimizationTrace trace;
  trace.records.push_back({0, {0.0, 0.0}, 0.184, {-0.5, 0.0}, false});
  trace.records.push_back({1, {0.5, 0.0}, 0.02, {-0.1, 0.0}, true});
  std::ostringstream out;
  io::write_trace_csv(out, trace, {"lat", "lon"});
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "k,lat_rad,lat_deg,lon_rad,lon_deg,energy,grad_lat,grad_lon,adjusted");
  std::getline(in, line);
  EXPECT_EQ(line, "0,0,0,0,0,0.184,-0.5,0,0");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 6), "1,0.5,");
  EXPECT_EQ(line.back(), '1');
}

TEST(EvaluationsCsv, Header) {
  std::ostringstream out;
  io::write_evaluations_csv(out, {{0, {0.0}, Evaluation{0.25, Complex(0.046, 0.0), 0.184, {}, {}, {-0.5}}}}, {"x"});
  EXPECT_EQ(out.str(), "k,x_rad,lambda,re_upsilon,im_upsilon,energy,grad_x\n0,0,0.25,0.046,0,0.184,-0.5\n");
}
