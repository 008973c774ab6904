#pragma once

#include <stdexcept>
#include <string>

namespace hrmc {

enum class Errc {
    replacement_arity,
    incomplete_assignment,
    node_not_found,
    invalid_pinning,
    tree_shape,
    syntax,
    undeclared_atom,
    unsupported_bound,
    not_an_lts,
    unknown_color,
    arity_mismatch,
    invalid_grammar,
    too_many_states,
    io,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc c, const std::string& what)
        : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

}  // namespace hrmc
