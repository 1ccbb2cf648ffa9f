#include "qif/circuitfile.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <utility>

namespace qif::circuit {

std::string_view to_string(ReportKind kind) {
    switch (kind) {
        case ReportKind::Moments: return "moments";
        case ReportKind::Wavefunction: return "wavefunction";
        case ReportKind::Conservation: return "conservation";
    }
    return "?";
}

std::string_view instruction_name(const Instruction& instruction) {
    struct Visitor {
        std::string_view operator()(const Source&) const { return "source"; }
        std::string_view operator()(const BeamSplitter&) const { return "bs"; }
        std::string_view operator()(const Kick&) const { return "kick"; }
        std::string_view operator()(const Phase&) const { return "phase"; }
        std::string_view operator()(const Recombine&) const { return "recombine"; }
        std::string_view operator()(const Select&) const { return "select"; }
        std::string_view operator()(const Report&) const { return "report"; }
    };
    return std::visit(Visitor{}, instruction);
}

bool CircuitProgram::same_instructions(const CircuitProgram& other) const {
    if (statements.size() != other.statements.size()) return false;
    for (std::size_t i = 0; i < statements.size(); ++i)
        if (!(statements[i].instruction == other.statements[i].instruction)) return false;
    return true;
}

ParseError::ParseError(int line, int column, std::string message, std::string token)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(std::move(message)),
      token_(std::move(token)) {}

CircuitRuntimeError::CircuitRuntimeError(int line, const std::string& message)
    : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

struct Token {
    std::string_view text;
    int column = 1;
};

[[noreturn]] void fail(int line, const Token& token, const std::string& message) {
    throw ParseError(line, token.column, message, std::string(token.text));
}

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i >= line.size()) break;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return tokens;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// [+-]? (digits [. digits?] | . digits) ([eE] [+-]? digits)?
bool is_decimal(std::string_view s) {
    std::size_t i = 0;
    const std::size_t n = s.size();
    if (i < n && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t digits = 0;
    while (i < n && is_digit(s[i])) ++i, ++digits;
    if (i < n && s[i] == '.') {
        ++i;
        while (i < n && is_digit(s[i])) ++i, ++digits;
    }
    if (digits == 0) return false;
    if (i < n && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        if (i < n && (s[i] == '+' || s[i] == '-')) ++i;
        std::size_t exp_digits = 0;
        while (i < n && is_digit(s[i])) ++i, ++exp_digits;
        if (exp_digits == 0) return false;
    }
    return i == n;
}

double parse_number(int line, const Token& value) {
    if (!is_decimal(value.text)) fail(line, value, "malformed number '" + std::string(value.text) + "'");
    std::string_view digits = value.text;
    if (digits.front() == '+') digits.remove_prefix(1);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), out);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || !std::isfinite(out))
        fail(line, value, "number out of range '" + std::string(value.text) + "'");
    return out;
}

struct KeyValue {
    Token key;
    Token value;
};

// Collects key=value tokens and checks them against the allowed key set.
class Arguments {
public:
    Arguments(int line, const Token& name, std::span<const Token> tokens,
              std::initializer_list<std::string_view> allowed)
        : line_(line), name_(name) {
        for (const Token& tok : tokens) {
            const std::size_t eq = tok.text.find('=');
            if (eq == std::string_view::npos) fail(line, tok, "expected key=value, got '" + std::string(tok.text) + "'");
            Token key{tok.text.substr(0, eq), tok.column};
            Token value{tok.text.substr(eq + 1), tok.column + static_cast<int>(eq) + 1};
            if (key.text.empty()) fail(line, tok, "missing key before '='");
            bool known = false;
            for (std::string_view a : allowed) known = known || a == key.text;
            if (!known)
                fail(line, key, "unknown key '" + std::string(key.text) + "' for " + std::string(name.text));
            for (const KeyValue& kv : pairs_)
                if (kv.key.text == key.text) fail(line, key, "duplicate key '" + std::string(key.text) + "'");
            if (value.text.empty()) fail(line, key, "missing value for '" + std::string(key.text) + "'");
            pairs_.push_back({key, value});
        }
        for (std::string_view a : allowed) require(a);
    }

    const Token& value(std::string_view key) const {
        for (const KeyValue& kv : pairs_)
            if (kv.key.text == key) return kv.value;
        return name_;  // unreachable after require()
    }

    double number(std::string_view key) const { return parse_number(line_, value(key)); }

    Path path() const {
        const Token& v = value("path");
        if (v.text == "A") return Path::A;
        if (v.text == "B") return Path::B;
        fail(line_, v, "path must be A or B");
    }

    Port port() const {
        const Token& v = value("port");
        if (v.text == "C") return Port::C;
        if (v.text == "D") return Port::D;
        fail(line_, v, "port must be C or D");
    }

private:
    void require(std::string_view key) const {
        for (const KeyValue& kv : pairs_)
            if (kv.key.text == key) return;
        fail(line_, name_, "missing key '" + std::string(key) + "' for " + std::string(name_.text));
    }

    int line_;
    Token name_;
    std::vector<KeyValue> pairs_;
};

Instruction parse_instruction(int line, std::span<const Token> tokens) {
    const Token& name = tokens.front();
    const auto rest = tokens.subspan(1);

    if (name.text == "report") {
        if (rest.empty()) fail(line, name, "report needs a kind: moments, wavefunction or conservation");
        if (rest.size() > 1) fail(line, rest[1], "unexpected token '" + std::string(rest[1].text) + "'");
        const Token& kind = rest[0];
        if (kind.text == "moments") return Report{ReportKind::Moments};
        if (kind.text == "wavefunction") return Report{ReportKind::Wavefunction};
        if (kind.text == "conservation") return Report{ReportKind::Conservation};
        fail(line, kind, "report kind must be moments, wavefunction or conservation");
    }
    if (name.text == "source") {
        const Arguments args(line, name, rest, {"width", "mean"});
        const double width = args.number("width");
        if (!(width > 0.0)) fail(line, args.value("width"), "width must be positive");
        return Source{width, args.number("mean")};
    }
    if (name.text == "bs") {
        const Arguments args(line, name, rest, {"t"});
        const double t = args.number("t");
        if (!(t >= 0.0 && t <= 1.0)) fail(line, args.value("t"), "t must lie in [0, 1]");
        return BeamSplitter{t};
    }
    if (name.text == "kick") {
        const Arguments args(line, name, rest, {"path", "delta"});
        return Kick{args.path(), args.number("delta")};
    }
    if (name.text == "phase") {
        const Arguments args(line, name, rest, {"path", "alpha"});
        return Phase{args.path(), args.number("alpha")};
    }
    if (name.text == "recombine") {
        const Arguments args(line, name, rest, {});
        return Recombine{};
    }
    if (name.text == "select") {
        const Arguments args(line, name, rest, {"port"});
        return Select{args.port()};
    }
    fail(line, name, "unknown instruction '" + std::string(name.text) + "'");
}

class OrderChecker {
public:
    void check(const Instruction& instruction, const SourceLocation& at) {
        const std::string name(instruction_name(instruction));
        const auto error = [&](const std::string& message) {
            throw ParseError(at.line, at.column, message, name);
        };
        if (std::holds_alternative<Source>(instruction)) {
            if (source_) error("duplicate source");
            source_ = true;
            return;
        }
        if (!source_) error("missing source");
        if (std::holds_alternative<BeamSplitter>(instruction)) {
            if (bs_) error("duplicate bs");
            bs_ = true;
        } else if (std::holds_alternative<Kick>(instruction) || std::holds_alternative<Phase>(instruction)) {
            if (!bs_) error("bs must precede " + name);
            if (recombined_) error(name + " after recombine");
        } else if (std::holds_alternative<Recombine>(instruction)) {
            if (!bs_) error("bs must precede recombine");
            if (recombined_) error("duplicate recombine");
            recombined_ = true;
        } else if (std::holds_alternative<Select>(instruction)) {
            if (!recombined_) error("recombine must precede select");
            selected_ = true;
        } else if (std::holds_alternative<Report>(instruction)) {
            if (!selected_) error("select must precede report");
        }
    }

    void finish(int last_line) const {
        if (!source_) throw ParseError(last_line, 1, "missing source", "");
    }

private:
    bool source_ = false;
    bool bs_ = false;
    bool recombined_ = false;
    bool selected_ = false;
};

std::string format_number(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

std::string fixed(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", value);
    return buf;
}

}  // namespace

CircuitProgram parse(std::string_view text) {
    CircuitProgram program;
    OrderChecker order;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        ++line_no;
        pos = end + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

        const std::vector<Token> tokens = tokenize(line);
        if (tokens.empty()) continue;
        Statement statement{parse_instruction(line_no, tokens), {line_no, tokens.front().column}};
        order.check(statement.instruction, statement.location);
        program.statements.push_back(std::move(statement));
    }
    order.finish(1);
    return program;
}

void validate(const CircuitProgram& program) {
    OrderChecker order;
    for (const Statement& s : program.statements) order.check(s.instruction, s.location);
    order.finish(1);
}

std::string serialize(const CircuitProgram& program) {
    std::string out;
    for (const Statement& s : program.statements) {
        out += instruction_name(s.instruction);
        std::visit(
            [&out](const auto& ins) {
                using T = std::decay_t<decltype(ins)>;
                if constexpr (std::is_same_v<T, Source>) {
                    out += " width=" + format_number(ins.width) + " mean=" + format_number(ins.mean);
                } else if constexpr (std::is_same_v<T, BeamSplitter>) {
                    out += " t=" + format_number(ins.t);
                } else if constexpr (std::is_same_v<T, Kick>) {
                    out += " path=" + std::string(to_string(ins.path)) + " delta=" + format_number(ins.delta);
                } else if constexpr (std::is_same_v<T, Phase>) {
                    out += " path=" + std::string(to_string(ins.path)) + " alpha=" + format_number(ins.alpha);
                } else if constexpr (std::is_same_v<T, Select>) {
                    out += " port=" + std::string(to_string(ins.port));
                } else if constexpr (std::is_same_v<T, Report>) {
                    out += " " + std::string(to_string(ins.kind));
                }
            },
            s.instruction);
        out += '\n';
    }
    return out;
}

namespace {

class Executor {
public:
    explicit Executor(const GridSpec& grid) : grid_(grid) {}

    void run(const Statement& s) {
        line_ = s.location.line;
        try {
            std::visit([this](const auto& ins) { step(ins); }, s.instruction);
        } catch (const CircuitRuntimeError&) {
            throw;
        } catch (const Error& e) {
            throw CircuitRuntimeError(line_, e.what());
        }
    }

    ExecutionResult finish() { return {text_.str(), std::move(records_)}; }

private:
    MomentumWavefunction& path(Path p) { return p == Path::A ? paths_->path_a : paths_->path_b; }

    void step(const Source& s) { input_ = gaussian_init({s.width, s.mean}, grid_); }

    void step(const BeamSplitter& b) { paths_ = split(*input_, BeamSplitterCoeffs(b.t)); }

    void step(const Kick& k) { path(k.path) = shift(path(k.path), k.delta); }

    void step(const Phase& p) { path(p.path) = scaled(std::polar(1.0, p.alpha), path(p.path)); }

    void step(const Recombine&) {
        expected_flux_ = first_moment(paths_->path_a) + first_moment(paths_->path_b);
        ports_ = recombine(*paths_);
    }

    void step(const Select& s) { selected_ = port_stats(ports_->raw(s.port), s.port); }

    void step(const Report& r) {
        ReportRecord record;
        record.line = line_;
        record.kind = r.kind;
        text_ << "line " << line_ << ": report " << to_string(r.kind);
        if (r.kind == ReportKind::Conservation) {
            record.port_c = port_stats(ports_->raw_c, Port::C);
            record.port_d = port_stats(ports_->raw_d, Port::D);
            record.residual =
                std::abs(record.port_c->weighted_mean + record.port_d->weighted_mean - expected_flux_);
            text_ << " P_C*<p>_C=" << fixed(record.port_c->weighted_mean)
                  << " P_D*<p>_D=" << fixed(record.port_d->weighted_mean)
                  << " expected=" << fixed(expected_flux_) << " residual=" << fixed(record.residual) << '\n';
        } else {
            const PortOutcome& out = *selected_;
            if (out.dark())
                throw CircuitRuntimeError(line_, "port " + std::string(to_string(out.port)) +
                                                     " is dark (probability " + fixed(out.probability) + ")");
            record.outcome = out;
            text_ << " port=" << to_string(out.port) << " probability=" << fixed(out.probability)
                  << " mean_p=" << fixed(*out.mean_p);
            if (r.kind == ReportKind::Moments) {
                text_ << " variance_p=" << fixed(variance_momentum(*out.wavefunction)) << '\n';
            } else {
                text_ << '\n' << "p,re,im,density\n";
                const MomentumWavefunction& wf = *out.wavefunction;
                for (std::size_t k = 0; k < wf.size(); ++k)
                    text_ << fixed(grid_.momentum(k)) << ',' << fixed(wf[k].real()) << ',' << fixed(wf[k].imag())
                          << ',' << fixed(std::norm(wf[k])) << '\n';
            }
        }
        records_.push_back(std::move(record));
    }

    GridSpec grid_;
    int line_ = 0;
    std::optional<MomentumWavefunction> input_;
    std::optional<TwoPathState> paths_;
    std::optional<ExitPorts> ports_;
    std::optional<PortOutcome> selected_;
    double expected_flux_ = 0.0;
    std::ostringstream text_;
    std::vector<ReportRecord> records_;
};

}  // namespace

ExecutionResult execute(const CircuitProgram& program, const GridSpec& grid) {
    validate(program);
    Executor executor(grid);
    for (const Statement& s : program.statements) executor.run(s);
    return executor.finish();
}

}  // namespace qif::circuit
