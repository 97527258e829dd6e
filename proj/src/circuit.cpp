#include "qrl/circuit.hpp"

#include <unordered_map>

#include "qrl/errors.hpp"

namespace qrl {

void Circuit::validate() const {
    // Tag -> number of measured subsystems, in program order.
    std::unordered_map<std::string, std::size_t> tags;
    for (const auto& step : steps) {
        if (const auto* g = std::get_if<GateStep>(&step)) {
            validate_gate(layout, g->op);
        } else if (const auto* m = std::get_if<MeasureStep>(&step)) {
            if (m->tag.empty()) throw ValidationError("measurement needs a tag");
            if (tags.contains(m->tag))
                throw ValidationError("measurement tag '" + m->tag + "' reused");
            if (m->subsystems.empty())
                throw LayoutError("measurement needs at least one subsystem");
            std::vector<bool> seen(layout.size(), false);
            for (std::size_t s : m->subsystems) {
                layout.at(s);
                if (seen[s]) throw LayoutError("measured subsystem listed twice");
                seen[s] = true;
            }
            tags[m->tag] = m->subsystems.size();
        } else {
            const auto& c = std::get<CondGateStep>(step);
            auto it = tags.find(c.tag);
            if (it == tags.end())
                throw ValidationError("conditional gate references tag '" + c.tag +
                                      "' before any measurement defines it");
            if (c.digits.size() != it->second)
                throw ValidationError("conditional gate on tag '" + c.tag + "' needs " +
                                      std::to_string(it->second) + " digits");
            validate_gate(layout, c.op);
        }
    }
}

GateCount gate_count(const Circuit& circuit) {
    GateCount count;
    for (const auto& step : circuit.steps) {
        const GateOp* op = nullptr;
        if (const auto* g = std::get_if<GateStep>(&step)) op = &g->op;
        else if (const auto* c = std::get_if<CondGateStep>(&step)) op = &c->op;
        else {
            ++count.measurements;
            continue;
        }
        ++count.total;
        ++count.by_kind[kind_name(op->kind)];
    }
    return count;
}

const char* kind_name(GateOp::Kind kind) {
    switch (kind) {
        case GateOp::Kind::Gxor: return "gxor";
        case GateOp::Kind::Xor: return "xor";
        case GateOp::Kind::Cnot: return "cnot";
        case GateOp::Kind::Local: return "local";
        case GateOp::Kind::ControlledLocal: return "clocal";
    }
    return "?";
}

}  // namespace qrl
