#include "cvqe/io.hpp"

#include <charconv>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "cvqe/error.hpp"

namespace cvqe::io {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

json parse_json(const std::string& text, const std::string& context) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(context + ": " + e.what());
  }
  if (!j.is_object()) fail(context + ": expected a JSON object");
  return j;
}

template <class T>
T field(const json& j, const char* key, const std::string& context) {
  if (!j.contains(key)) fail(context + ": missing '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(context + ": bad '" + key + "': " + e.what());
  }
}

Complex parse_coeff(const json& j, const std::string& context) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  fail(context + ": coeff must be a number or [re, im]");
}


json sampleset_json(const SampleSet& set) {
  json entries = json::array();
  for (const auto& e : set.entries) {
    entries.push_back({family_of(e.outcome, set.qubits).to_string(), e.weight});
  }
  return {{"circuit_key", set.circuit_key},
          {"mode", std::string(to_string(set.mode))},
          {"qubits", set.qubits},
          {"S", set.shots},
          {"entries", std::move(entries)}};
}

SampleSet sampleset_from(const json& j) {
  const std::string ctx = "sample set";
  SampleSet set;
  set.circuit_key = field<std::string>(j, "circuit_key", ctx);
  set.mode = parse_sample_mode(field<std::string>(j, "mode", ctx));
  set.qubits = field<std::size_t>(j, "qubits", ctx);
  set.shots = field<std::uint64_t>(j, "S", ctx);
  for (const auto& e : field<json>(j, "entries", ctx)) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_number()) {
      fail(ctx + " '" + set.circuit_key + "': bad entry");
    }
    const auto family = OccupationFamily::parse(e[0].get<std::string>());
    if (family.size() != set.qubits) fail(ctx + " '" + set.circuit_key + "': outcome width mismatch");
    const double w = e[1].get<double>();
    if (!(w >= 0.0)) fail(ctx + " '" + set.circuit_key + "': negative weight");
    set.entries.push_back({family.index(), w});
  }
  return set;
}

}  // namespace

std::string format_number(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

Hamiltonian read_hamiltonian(std::istream& in) {
  std::optional<Hamiltonian> h;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string ctx = "hamiltonian line " + std::to_string(line_no);
    const json j = parse_json(line, ctx);
    if (!h) {
      h.emplace(SystemIndexing(field<std::vector<std::string>>(j, "modes", ctx)));
      continue;
    }
    const auto create = field<std::vector<std::string>>(j, "create", ctx);
    const auto annihilate = field<std::vector<std::string>>(j, "annihilate", ctx);
    if (!j.contains("coeff")) fail(ctx + ": missing 'coeff'");
    try {
      h->add_term(parse_coeff(j["coeff"], ctx), create, annihilate);
    } catch (const Error& e) {
      throw Error(e.kind(), ctx + ": " + e.what());
    }
  }
  if (!h) fail("hamiltonian: missing header record");
  return std::move(*h);
}

Hamiltonian load_hamiltonian(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read hamiltonian file " + path.string());
  return read_hamiltonian(in);
}

void write_hamiltonian(std::ostream& out, const Hamiltonian& hamiltonian) {
  const auto& idx = hamiltonian.indexing();
  out << json{{"modes", idx.labels()}}.dump() << '\n';
  for (const auto& term : hamiltonian.terms()) {
    json create = json::array(), annihilate = json::array();
    for (const auto& op : canonical_operator_string(term)) {
      (op.dagger ? create : annihilate).push_back(idx.label(op.mode));
    }
    out << json{{"coeff", {term.coeff.real(), term.coeff.imag()}},
                {"create", create},
                {"annihilate", annihilate}}
               .dump()
        << '\n';
  }
}

std::string circuit_to_json(const CircuitSpec& circuit) {
  json gates = json::array();
  for (const auto& g : circuit.gates) {
    json jg{{"gate", std::string(to_string(g.kind))}, {"target", g.target}};
    if (g.control) jg["control"] = *g.control;
    gates.push_back(std::move(jg));
  }
  return json{{"qubits", circuit.qubits}, {"gates", std::move(gates)}}.dump();
}

CircuitSpec circuit_from_json(const std::string& text) {
  const std::string ctx = "circuit";
  const json j = parse_json(text, ctx);
  CircuitSpec c;
  c.qubits = field<std::size_t>(j, "qubits", ctx);
  for (const auto& g : field<json>(j, "gates", ctx)) {
    GateOp op{parse_gate_kind(field<std::string>(g, "gate", ctx)), field<std::size_t>(g, "target", ctx),
              std::nullopt};
    if (g.contains("control")) op.control = field<std::size_t>(g, "control", ctx);
    c.gates.push_back(op);
  }
  c.validate();
  return c;
}

CircuitSpec load_circuit(const std::filesystem::path& path) { return circuit_from_json(read_text(path)); }

std::string sampleset_to_json(const SampleSet& set) { return sampleset_json(set).dump(); }

SampleSet sampleset_from_json(const std::string& text) {
  return sampleset_from(parse_json(text, "sample set"));
}

std::string archive_to_json(const SampleArchive& archive) {
  json circuits = json::array();
  for (const auto& [key, set] : archive.sets) circuits.push_back(sampleset_json(set));
  return json{{"format", "cvqe-archive"},
              {"version", 1},
              {"mode", std::string(to_string(archive.mode))},
              {"S", archive.shots},
              {"master_seed", archive.master_seed},
              {"plan_hash", archive.plan_hash},
              {"modes", archive.modes},
              {"circuits", std::move(circuits)}}
      .dump(1);
}

SampleArchive archive_from_json(const std::string& text) {
  const std::string ctx = "archive";
  const json j = parse_json(text, ctx);
  if (j.value("format", "") != "cvqe-archive") fail(ctx + ": not a sample archive");
  SampleArchive a;
  a.mode = parse_sample_mode(field<std::string>(j, "mode", ctx));
  a.shots = field<std::uint64_t>(j, "S", ctx);
  a.master_seed = field<std::uint64_t>(j, "master_seed", ctx);
  a.plan_hash = field<std::string>(j, "plan_hash", ctx);
  a.modes = field<std::vector<std::string>>(j, "modes", ctx);
  for (const auto& c : field<json>(j, "circuits", ctx)) {
    auto set = sampleset_from(c);
    auto key = set.circuit_key;
    if (!a.sets.emplace(std::move(key), std::move(set)).second) {
      fail(ctx + ": duplicate circuit '" + c["circuit_key"].get<std::string>() + "'");
    }
  }
  return a;
}

void save_archive(const std::filesystem::path& path, const SampleArchive& archive) {
  write_text(path, archive_to_json(archive) + "\n");
}

SampleArchive load_archive(const std::filesystem::path& path) { return archive_from_json(read_text(path)); }

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(ErrorKind::Io, "cannot write " + path.string());
}

void write_trace_csv(std::ostream& out, const OptimizationTrace& trace,
                     const std::vector<std::string>& names) {
  out << "k";
  for (const auto& n : names) out << ',' << n << "_rad," << n << "_deg";
  out << ",energy";
  for (const auto& n : names) out << ",grad_" << n;
  out << ",adjusted\n";
  for (const auto& r : trace.records) {
    out << r.k;
    for (double x : r.theta) out << ',' << format_number(x) << ',' << format_number(x * 180.0 / std::numbers::pi);
    out << ',' << format_number(r.energy);
    for (double g : r.gradient) out << ',' << format_number(g);
    out << ',' << (r.adjusted ? 1 : 0) << '\n';
  }
}

void write_evaluations_csv(std::ostream& out, const std::vector<EvaluationRecord>& records,
                           const std::vector<std::string>& names) {
  out << "k";
  for (const auto& n : names) out << ',' << n << "_rad";
  out << ",lambda,re_upsilon,im_upsilon,energy";
  for (const auto& n : names) out << ",grad_" << n;
  out << '\n';
  for (const auto& r : records) {
    out << r.k;
    for (double x : r.theta) out << ',' << format_number(x);
    out << ',' << format_number(r.value.lambda) << ',' << format_number(r.value.upsilon.real()) << ','
        << format_number(r.value.upsilon.imag()) << ',' << format_number(r.value.energy);
    for (double g : r.value.grad_energy) out << ',' << format_number(g);
    out << '\n';
  }
}

}  // namespace cvqe::io
