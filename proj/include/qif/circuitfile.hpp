#pragma once

// Line-oriented description of an interferometer run (`.qif` files).
//
//   # comment
//   source width=1 mean=0
//   bs t=0.85
//   kick path=B delta=0.2
//   phase path=B alpha=0
//   recombine
//   select port=C
//   report moments
//
// One instruction per line, `name key=value ...`; `report` takes its kind
// (moments, wavefunction, conservation) as a bare word. Numbers are decimal
// with an optional exponent, in units of W and radians. Every key is
// required, and a repeated key is an error.
//
// Ordering: `source` comes first and once; `bs` at most once and before any
// `kick`/`phase`; `recombine` at most once, after `bs`, and after it no more
// kicks or phases; `select` needs `recombine`; `report` needs a `select`.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qif/errors.hpp"
#include "qif/interferometer.hpp"
#include "qif/wavepacket.hpp"

namespace qif::circuit {

struct Source {
    double width = 1.0;
    double mean = 0.0;
    friend bool operator==(const Source&, const Source&) = default;
};

struct BeamSplitter {
    double t = 0.0;
    friend bool operator==(const BeamSplitter&, const BeamSplitter&) = default;
};

struct Kick {
    Path path = Path::B;
    double delta = 0.0;
    friend bool operator==(const Kick&, const Kick&) = default;
};

struct Phase {
    Path path = Path::B;
    double alpha = 0.0;
    friend bool operator==(const Phase&, const Phase&) = default;
};

struct Recombine {
    friend bool operator==(const Recombine&, const Recombine&) = default;
};

struct Select {
    Port port = Port::C;
    friend bool operator==(const Select&, const Select&) = default;
};

enum class ReportKind { Moments, Wavefunction, Conservation };

struct Report {
    ReportKind kind = ReportKind::Moments;
    friend bool operator==(const Report&, const Report&) = default;
};

using Instruction = std::variant<Source, BeamSplitter, Kick, Phase, Recombine, Select, Report>;

std::string_view instruction_name(const Instruction& instruction);
std::string_view to_string(ReportKind kind);

// 1-based line and byte column.
struct SourceLocation {
    int line = 1;
    int column = 1;
};

struct Statement {
    Instruction instruction;
    SourceLocation location;
};

struct CircuitProgram {
    std::vector<Statement> statements;

    // Compares instructions only, ignoring source locations.
    bool same_instructions(const CircuitProgram& other) const;
};

class ParseError : public Error {
public:
    ParseError(int line, int column, std::string message, std::string token);

    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& message() const { return message_; }
    const std::string& token() const { return token_; }

private:
    int line_;
    int column_;
    std::string message_;
    std::string token_;
};

// Throws ParseError on the first offending line.
CircuitProgram parse(std::string_view text);

// Checks the ordering rules; parse() already does this.
void validate(const CircuitProgram& program);

// Canonical text form. Comments and blank lines are not preserved.
std::string serialize(const CircuitProgram& program);

class CircuitRuntimeError : public Error {
public:
    CircuitRuntimeError(int line, const std::string& message);
    int line() const { return line_; }

private:
    int line_;
};

struct ReportRecord {
    int line = 0;
    ReportKind kind = ReportKind::Moments;
    // Selected port outcome, for moments and wavefunction reports.
    std::optional<PortOutcome> outcome;
    // Both ports and the residual, for conservation reports.
    std::optional<PortOutcome> port_c;
    std::optional<PortOutcome> port_d;
    double residual = 0.0;
};

struct ExecutionResult {
    std::string text;
    std::vector<ReportRecord> records;
};

// Runs the program on `grid`. Module errors (aliasing, grid too narrow) and
// reports on a dark port surface as CircuitRuntimeError with the line.
ExecutionResult execute(const CircuitProgram& program, const GridSpec& grid);

}  // namespace qif::circuit
