#pragma once

#include <stdexcept>
#include <string>

namespace zf {

enum class Errc {
    domain,
    budget_exceeded,
    infeasible_pins,
    undefined_ratio,
    pole,
    not_a_tree,
    cyclic_structure,
    not_bipartite,
    branch_cut,
    hypothesis_violated,
    case_mismatch,
    regime_mismatch,
    condition_mismatch,
    nonconvergence,
    zero_constant_term,
    invalid_input,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace zf
