#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "qrl/gates.hpp"
#include "qrl/layout.hpp"

namespace qrl {

struct GateStep {
    GateOp op;
    bool operator==(const GateStep&) const = default;
};

struct MeasureStep {
    std::vector<std::size_t> subsystems;
    std::string tag;
    bool operator==(const MeasureStep&) const = default;
};

// Gate applied only on branches whose recorded outcome for `tag` equals
// `digits` exactly.
struct CondGateStep {
    std::string tag;
    std::vector<std::size_t> digits;
    GateOp op;
    bool operator==(const CondGateStep&) const = default;
};

using Step = std::variant<GateStep, MeasureStep, CondGateStep>;

// Ordered program over a fixed layout.  validate() checks every gate against
// the layout, that measurement tags are unique, and that conditional gates
// refer to a tag some earlier measurement defined with the right digit
// count.
struct Circuit {
    SystemLayout layout;
    std::vector<Step> steps;

    void validate() const;

    bool operator==(const Circuit&) const = default;
};

struct GateCount {
    std::size_t total = 0;
    std::size_t measurements = 0;
    std::map<std::string, std::size_t> by_kind;
};

// Gate and ConditionalGate steps count toward total; measurements are
// tallied separately.
GateCount gate_count(const Circuit& circuit);

const char* kind_name(GateOp::Kind kind);

// Circuit text, one directive per line, '#' starts a comment:
//
//   layout <label>:<dim>[:<role>] ...     role in {A,E,R,P}, default R
//   gxor <control> <target>
//   xor <control> <target>
//   cnot <control> <target>
//   local <subsystem> <matrix>            ux, uy, x, id, or 4 complex entries
//   clocal (<sub>=<digit>,...) <sub> <matrix>
//   measure <subsystem>... as <tag>
//   cgate <tag>=<digits> <gate-line>
//
// Subsystems are referred to by label.  Inline matrices are row-major 2x2,
// entries like `0.5-0.5i`, comma separated without spaces.
Circuit parse_circuit(const std::string& text);

// Inverse of parse_circuit up to comments and whitespace:
// parse_circuit(print_circuit(c)) == c.
std::string print_circuit(const Circuit& circuit);

}  // namespace qrl
