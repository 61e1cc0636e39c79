#include "zerofree/errors.hpp"

namespace zf {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::domain: return "domain error";
        case Errc::budget_exceeded: return "budget exceeded";
        case Errc::infeasible_pins: return "infeasible pins";
        case Errc::undefined_ratio: return "undefined ratio";
        case Errc::pole: return "pole";
        case Errc::not_a_tree: return "not a tree";
        case Errc::cyclic_structure: return "cyclic structure";
        case Errc::not_bipartite: return "not bipartite";
        case Errc::branch_cut: return "branch cut";
        case Errc::hypothesis_violated: return "hypothesis violated";
        case Errc::case_mismatch: return "case mismatch";
        case Errc::regime_mismatch: return "regime mismatch";
        case Errc::condition_mismatch: return "condition mismatch";
        case Errc::nonconvergence: return "nonconvergence";
        case Errc::zero_constant_term: return "zero constant term";
        case Errc::invalid_input: return "invalid input";
    }
    return "error";
}

}  // namespace zf
