#include "qrl/layout.hpp"

#include <unordered_set>

#include "qrl/errors.hpp"
#include "qrl/tolerances.hpp"

namespace qrl {

char role_letter(Role r) {
    switch (r) {
        case Role::Agent: return 'A';
        case Role::Environment: return 'E';
        case Role::Register: return 'R';
        case Role::Purifier: return 'P';
    }
    return '?';
}

std::optional<Role> role_from_letter(char c) {
    switch (c) {
        case 'A': return Role::Agent;
        case 'E': return Role::Environment;
        case 'R': return Role::Register;
        case 'P': return Role::Purifier;
        default: return std::nullopt;
    }
}

SystemLayout::SystemLayout(std::vector<Subsystem> subsystems) : subs_(std::move(subsystems)) {
    if (subs_.empty()) throw LayoutError("layout needs at least one subsystem");

    std::unordered_set<std::string> seen;
    total_ = 1;
    for (const auto& s : subs_) {
        if (s.label.empty()) throw LayoutError("subsystem label must be non-empty");
        if (!seen.insert(s.label).second)
            throw LayoutError("duplicate subsystem label '" + s.label + "'");
        if (s.dim < 2)
            throw LayoutError("subsystem '" + s.label + "' needs dimension >= 2");
        if (total_ > kMaxTotalDimension / s.dim)
            throw LayoutError("total dimension exceeds " + std::to_string(kMaxTotalDimension));
        total_ *= s.dim;
    }

    strides_.assign(subs_.size(), 1);
    for (std::size_t i = subs_.size(); i-- > 1;)
        strides_[i - 1] = strides_[i] * subs_[i].dim;
}

const Subsystem& SystemLayout::at(std::size_t i) const {
    if (i >= subs_.size())
        throw LayoutError("subsystem index " + std::to_string(i) + " out of range");
    return subs_[i];
}

std::size_t SystemLayout::stride(std::size_t i) const {
    at(i);
    return strides_[i];
}

std::size_t SystemLayout::index_of(std::string_view label) const {
    if (auto i = find(label)) return *i;
    throw LayoutError("unknown subsystem label '" + std::string(label) + "'");
}

std::optional<std::size_t> SystemLayout::find(std::string_view label) const {
    for (std::size_t i = 0; i < subs_.size(); ++i)
        if (subs_[i].label == label) return i;
    return std::nullopt;
}

std::size_t SystemLayout::index_from_digits(std::span<const std::size_t> digits) const {
    if (digits.size() != subs_.size())
        throw LayoutError("expected one digit per subsystem");
    std::size_t index = 0;
    for (std::size_t i = 0; i < subs_.size(); ++i) {
        if (digits[i] >= subs_[i].dim)
            throw LayoutError("digit " + std::to_string(digits[i]) + " out of range for '" +
                              subs_[i].label + "'");
        index += digits[i] * strides_[i];
    }
    return index;
}

}  // namespace qrl
