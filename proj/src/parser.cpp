#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <unordered_map>

#include "qrl/circuit.hpp"
#include "qrl/errors.hpp"

namespace qrl {

namespace {

struct Token {
    std::string text;
    int column;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        if (line[i] == '#') break;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
               line[i] != '#')
            ++i;
        tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return tokens;
}

bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

double parse_double(const std::string& s, int line, int column) {
    if (s.empty()) throw ParseError(line, column, "expected a number");
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size())
        throw ParseError(line, column, "bad number '" + s + "'");
    return v;
}

// a, bi, a+bi, a-bi; a bare or signed `i` counts as coefficient 1.
Cx parse_complex(const std::string& s, int line, int column) {
    if (s.empty()) throw ParseError(line, column, "expected a complex number");
    if (s.back() != 'i') return {parse_double(s, line, column), 0.0};

    const std::string body = s.substr(0, s.size() - 1);
    // Split before the sign of the imaginary part, skipping exponent signs.
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') &&
            body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    auto coefficient = [&](std::string part) {
        if (part.empty() || part == "+") return 1.0;
        if (part == "-") return -1.0;
        return parse_double(part, line, column);
    };
    if (split == std::string::npos) return {0.0, coefficient(body)};
    return {parse_double(body.substr(0, split), line, column),
            coefficient(body.substr(split))};
}

std::vector<Cx> parse_inline_matrix(const std::string& s, int line, int column) {
    std::vector<Cx> entries;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = s.find(',', start);
        entries.push_back(parse_complex(s.substr(start, comma - start), line, column));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (entries.size() != 4)
        throw ParseError(line, column, "inline matrices are 2x2: four comma-separated entries");
    return entries;
}

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    Circuit parse() {
        std::istringstream in(text_);
        std::string raw;
        while (std::getline(in, raw)) {
            ++line_;
            const auto tokens = tokenize(raw);
            if (tokens.empty()) continue;
            directive(tokens);
        }
        if (!have_layout_) throw ParseError(line_ ? line_ : 1, 0, "missing layout directive");
        circuit_.validate();
        return std::move(circuit_);
    }

private:
    void directive(const std::vector<Token>& tokens) {
        const auto& head = tokens.front();
        if (!have_layout_) {
            if (head.text != "layout")
                throw ParseError(line_, head.column, "missing layout directive");
            layout_line(tokens);
            return;
        }
        if (head.text == "layout")
            throw ParseError(line_, head.column, "layout may only appear once");
        if (head.text == "measure") {
            measure_line(tokens);
            return;
        }
        if (head.text == "cgate") {
            cgate_line(tokens);
            return;
        }
        circuit_.steps.push_back(GateStep{gate_line(tokens, 0)});
    }

    void layout_line(const std::vector<Token>& tokens) {
        if (tokens.size() < 2)
            throw ParseError(line_, tokens[0].column, "layout needs at least one subsystem");
        std::vector<Subsystem> subs;
        for (std::size_t i = 1; i < tokens.size(); ++i) {
            const auto& tok = tokens[i];
            std::vector<std::string> parts;
            std::size_t start = 0;
            while (true) {
                const std::size_t colon = tok.text.find(':', start);
                parts.push_back(tok.text.substr(start, colon - start));
                if (colon == std::string::npos) break;
                start = colon + 1;
            }
            if (parts.size() < 2 || parts.size() > 3)
                throw ParseError(line_, tok.column,
                                 "expected <label>:<dim> or <label>:<dim>:<role>");
            if (!valid_name(parts[0]))
                throw ParseError(line_, tok.column, "bad subsystem label '" + parts[0] + "'");
            const double dim = parse_double(parts[1], line_, tok.column);
            if (dim < 2 || dim != static_cast<std::size_t>(dim))
                throw ParseError(line_, tok.column, "dimension must be an integer >= 2");
            Role role = Role::Register;
            if (parts.size() == 3) {
                if (parts[2].size() != 1)
                    throw ParseError(line_, tok.column, "role must be one of A, E, R, P");
                const auto r = role_from_letter(parts[2][0]);
                if (!r) throw ParseError(line_, tok.column, "role must be one of A, E, R, P");
                role = *r;
            }
            subs.push_back({parts[0], static_cast<std::size_t>(dim), role});
        }
        try {
            circuit_.layout = SystemLayout(std::move(subs));
        } catch (const Error& e) {
            throw ParseError(line_, tokens[0].column, e.what());
        }
        have_layout_ = true;
    }

    std::size_t subsystem(const Token& tok) const {
        if (const auto i = circuit_.layout.find(tok.text)) return *i;
        throw ParseError(line_, tok.column, "unknown subsystem '" + tok.text + "'");
    }

    GateOp finish_gate(GateOp op, int column) const {
        try {
            validate_gate(circuit_.layout, op);
        } catch (const Error& e) {
            throw ParseError(line_, column, e.what());
        }
        return op;
    }

    // Parses a gate directive starting at tokens[offset].
    GateOp gate_line(const std::vector<Token>& tokens, std::size_t offset) {
        const auto& head = tokens[offset];
        const std::size_t argc = tokens.size() - offset - 1;
        auto arg = [&](std::size_t k) -> const Token& { return tokens[offset + 1 + k]; };

        if (head.text == "gxor" || head.text == "xor" || head.text == "cnot") {
            if (argc != 2)
                throw ParseError(line_, head.column, head.text + " needs a control and a target");
            const std::size_t c = subsystem(arg(0));
            const std::size_t t = subsystem(arg(1));
            GateOp op = head.text == "gxor" ? make_gxor(c, t)
                        : head.text == "xor" ? make_xor(c, t)
                                             : make_cnot(c, t);
            return finish_gate(std::move(op), head.column);
        }
        if (head.text == "local") {
            if (argc != 2)
                throw ParseError(line_, head.column, "local needs a subsystem and a matrix");
            const std::size_t t = subsystem(arg(0));
            auto [matrix, name] = matrix_arg(arg(1), t);
            return finish_gate(make_local(t, std::move(matrix), std::move(name)), head.column);
        }
        if (head.text == "clocal") {
            if (argc != 3)
                throw ParseError(line_, head.column,
                                 "clocal needs a condition, a subsystem and a matrix");
            auto condition = condition_arg(arg(0));
            const std::size_t t = subsystem(arg(1));
            auto [matrix, name] = matrix_arg(arg(2), t);
            return finish_gate(
                make_controlled_local(std::move(condition), t, std::move(matrix), std::move(name)),
                head.column);
        }
        throw ParseError(line_, head.column, "unknown directive '" + head.text + "'");
    }

    std::pair<std::vector<Cx>, std::string> matrix_arg(const Token& tok, std::size_t target) {
        const std::size_t dim = circuit_.layout.dim(target);
        if (valid_name(tok.text)) {
            try {
                return {named_matrix(tok.text, dim), tok.text};
            } catch (const Error& e) {
                throw ParseError(line_, tok.column, e.what());
            }
        }
        if (dim != 2)
            throw ParseError(line_, tok.column, "inline matrices are defined on qubits only");
        return {parse_inline_matrix(tok.text, line_, tok.column), ""};
    }

    std::vector<std::pair<std::size_t, std::size_t>> condition_arg(const Token& tok) {
        if (tok.text.size() < 2 || tok.text.front() != '(' || tok.text.back() != ')')
            throw ParseError(line_, tok.column, "condition must look like (<label>=<digit>,...)");
        std::vector<std::pair<std::size_t, std::size_t>> condition;
        const std::string body = tok.text.substr(1, tok.text.size() - 2);
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = body.find(',', start);
            const std::string pair = body.substr(start, comma - start);
            const std::size_t eq = pair.find('=');
            if (eq == std::string::npos || eq == 0 || eq + 1 == pair.size())
                throw ParseError(line_, tok.column, "condition entry must be <label>=<digit>");
            const std::size_t sub = subsystem({pair.substr(0, eq), tok.column});
            const double digit = parse_double(pair.substr(eq + 1), line_, tok.column);
            if (digit < 0 || digit != static_cast<std::size_t>(digit))
                throw ParseError(line_, tok.column, "condition digit must be a non-negative integer");
            condition.emplace_back(sub, static_cast<std::size_t>(digit));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return condition;
    }

    void measure_line(const std::vector<Token>& tokens) {
        MeasureStep step;
        std::size_t i = 1;
        for (; i < tokens.size() && tokens[i].text != "as"; ++i)
            step.subsystems.push_back(subsystem(tokens[i]));
        if (i + 2 != tokens.size() || tokens[i].text != "as")
            throw ParseError(line_, tokens[0].column, "measure needs subsystems then 'as <tag>'");
        step.tag = tokens[i + 1].text;
        if (!valid_name(step.tag))
            throw ParseError(line_, tokens[i + 1].column, "bad tag '" + step.tag + "'");
        if (tags_.contains(step.tag))
            throw ParseError(line_, tokens[i + 1].column, "tag '" + step.tag + "' reused");
        if (step.subsystems.empty())
            throw ParseError(line_, tokens[0].column, "measure needs at least one subsystem");
        tags_[step.tag] = step.subsystems;
        circuit_.steps.push_back(std::move(step));
    }

    void cgate_line(const std::vector<Token>& tokens) {
        if (tokens.size() < 3)
            throw ParseError(line_, tokens[0].column, "cgate needs <tag>=<digits> then a gate");
        const auto& cond = tokens[1];
        const std::size_t eq = cond.text.find('=');
        if (eq == std::string::npos)
            throw ParseError(line_, cond.column, "expected <tag>=<digits>");
        CondGateStep step;
        step.tag = cond.text.substr(0, eq);
        const auto it = tags_.find(step.tag);
        if (it == tags_.end())
            throw ParseError(line_, cond.column,
                             "tag '" + step.tag + "' is not defined by an earlier measurement");
        const std::string digits = cond.text.substr(eq + 1);
        if (digits.size() != it->second.size())
            throw ParseError(line_, cond.column,
                             "tag '" + step.tag + "' records " +
                                 std::to_string(it->second.size()) + " digits");
        for (std::size_t k = 0; k < digits.size(); ++k) {
            if (!std::isdigit(static_cast<unsigned char>(digits[k])))
                throw ParseError(line_, cond.column, "outcome digits must be 0-9");
            const std::size_t d = static_cast<std::size_t>(digits[k] - '0');
            if (d >= circuit_.layout.dim(it->second[k]))
                throw ParseError(line_, cond.column, "outcome digit out of range");
            step.digits.push_back(d);
        }
        step.op = gate_line(tokens, 2);
        circuit_.steps.push_back(std::move(step));
    }

    const std::string& text_;
    Circuit circuit_;
    bool have_layout_ = false;
    std::unordered_map<std::string, std::vector<std::size_t>> tags_;
    int line_ = 0;
};

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_complex(Cx v) {
    std::string out = format_double(v.real());
    const double im = v.imag();
    if (!std::signbit(im)) out += "+";
    out += format_double(im) + "i";
    return out;
}

void print_gate(std::ostream& out, const Circuit& circuit, const GateOp& op) {
    const auto& layout = circuit.layout;
    out << kind_name(op.kind);
    if (op.kind == GateOp::Kind::ControlledLocal) {
        out << " (";
        for (std::size_t k = 0; k < op.condition.size(); ++k) {
            if (k) out << ',';
            out << layout.label(op.condition[k].first) << '=' << op.condition[k].second;
        }
        out << ')';
    }
    if (op.kind == GateOp::Kind::Local || op.kind == GateOp::Kind::ControlledLocal) {
        out << ' ' << layout.label(op.target) << ' ';
        if (!op.matrix_name.empty()) {
            out << op.matrix_name;
        } else {
            if (op.matrix.size() != 4)
                throw ValidationError("only 2x2 matrices can be printed inline");
            for (std::size_t k = 0; k < 4; ++k) {
                if (k) out << ',';
                out << format_complex(op.matrix[k]);
            }
        }
    } else {
        out << ' ' << layout.label(op.control) << ' ' << layout.label(op.target);
    }
}

}  // namespace

Circuit parse_circuit(const std::string& text) {
    return Parser(text).parse();
}

std::string print_circuit(const Circuit& circuit) {
    std::ostringstream out;
    out << "layout";
    for (const auto& s : circuit.layout.subsystems()) {
        out << ' ' << s.label << ':' << s.dim;
        if (s.role != Role::Register) out << ':' << role_letter(s.role);
    }
    out << '\n';
    for (const auto& step : circuit.steps) {
        if (const auto* g = std::get_if<GateStep>(&step)) {
            print_gate(out, circuit, g->op);
        } else if (const auto* m = std::get_if<MeasureStep>(&step)) {
            out << "measure";
            for (std::size_t s : m->subsystems) out << ' ' << circuit.layout.label(s);
            out << " as " << m->tag;
        } else {
            const auto& c = std::get<CondGateStep>(step);
            out << "cgate " << c.tag << '=';
            for (std::size_t d : c.digits) out << d;
            out << ' ';
            print_gate(out, circuit, c.op);
        }
        out << '\n';
    }
    return std::move(out).str();
}

}  // namespace qrl
