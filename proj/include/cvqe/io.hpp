#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cvqe/circuits.hpp"
#include "cvqe/estimator.hpp"
#include "cvqe/hamiltonian.hpp"
#include "cvqe/optimizer.hpp"

namespace cvqe::io {

// Hamiltonian files are JSON lines: a header {"modes": [...]} followed by one
// {"coeff": [re, im], "create": [...], "annihilate": [...]} record per term.
// Operator order inside the lists is significant.
Hamiltonian read_hamiltonian(std::istream& in);
Hamiltonian load_hamiltonian(const std::filesystem::path& path);
void write_hamiltonian(std::ostream& out, const Hamiltonian& hamiltonian);

std::string circuit_to_json(const CircuitSpec& circuit);
CircuitSpec circuit_from_json(const std::string& text);
CircuitSpec load_circuit(const std::filesystem::path& path);

std::string sampleset_to_json(const SampleSet& set);
SampleSet sampleset_from_json(const std::string& text);

std::string archive_to_json(const SampleArchive& archive);
SampleArchive archive_from_json(const std::string& text);
void save_archive(const std::filesystem::path& path, const SampleArchive& archive);
SampleArchive load_archive(const std::filesystem::path& path);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Shortest decimal text that reads back to the same double.
std::string format_number(double x);

/// k, theta (radians and degrees), E, gradient, adjusted flag.
void write_trace_csv(std::ostream& out, const OptimizationTrace& trace,
                     const std::vector<std::string>& parameter_names);

struct EvaluationRecord {
  std::size_t k = 0;
  ParameterVector theta;
  Evaluation value;
};

/// k, theta, Lambda, Re Upsilon, Im Upsilon, E, grad E.
void write_evaluations_csv(std::ostream& out, const std::vector<EvaluationRecord>& records,
                           const std::vector<std::string>& parameter_names);

}  // namespace cvqe::io
