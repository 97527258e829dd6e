#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qrl {

using Cx = std::complex<double>;

// Part a subsystem plays in a protocol.  Registers and purifiers start in
// digit 0 when inputs are randomized; agents and environments carry the
// interesting coefficients.
enum class Role { Agent, Environment, Register, Purifier };

char role_letter(Role r);
std::optional<Role> role_from_letter(char c);

struct Subsystem {
    std::string label;
    std::size_t dim = 0;
    Role role = Role::Register;

    bool operator==(const Subsystem&) const = default;
};

// Ordered list of qudits with mixed radix indexing.  Subsystem 0 is the most
// significant digit of an amplitude index, the last subsystem counts fastest.
class SystemLayout {
public:
    SystemLayout() = default;

    // Validates: at least one subsystem, every dim >= 2, labels unique and
    // non-empty, total dimension <= kMaxTotalDimension.
    explicit SystemLayout(std::vector<Subsystem> subsystems);

    std::size_t size() const { return subs_.size(); }
    std::size_t total_dimension() const { return total_; }
    const std::vector<Subsystem>& subsystems() const { return subs_; }

    const Subsystem& at(std::size_t i) const;
    std::size_t dim(std::size_t i) const { return at(i).dim; }
    std::size_t stride(std::size_t i) const;
    const std::string& label(std::size_t i) const { return at(i).label; }
    Role role(std::size_t i) const { return at(i).role; }

    // Label lookup; index_of throws LayoutError for unknown labels.
    std::size_t index_of(std::string_view label) const;
    std::optional<std::size_t> find(std::string_view label) const;

    // Digit of one subsystem within a flat amplitude index.
    std::size_t digit(std::size_t amp_index, std::size_t subsystem) const {
        return (amp_index / stride(subsystem)) % dim(subsystem);
    }

    // Flat index from one digit per subsystem, in layout order.
    std::size_t index_from_digits(std::span<const std::size_t> digits) const;
    std::size_t index_from_digits(std::initializer_list<std::size_t> digits) const {
        return index_from_digits(std::span<const std::size_t>(digits.begin(), digits.size()));
    }

    bool operator==(const SystemLayout& other) const { return subs_ == other.subs_; }

private:
    std::vector<Subsystem> subs_;
    std::vector<std::size_t> strides_;
    std::size_t total_ = 0;
};

}  // namespace qrl
