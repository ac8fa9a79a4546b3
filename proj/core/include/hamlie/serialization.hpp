#pragma once

#include <optional>
#include <string>

#include "hamlie/automorphism.hpp"
#include "hamlie/forms.hpp"
#include "hamlie/hamiltonian.hpp"
#include "hamlie/lie_algebra.hpp"

namespace hamlie {

// Every writer embeds the field descriptor {"k", "irreducible"}; readers throw
// InputError on malformed documents.

std::string poly_to_json(const Poly& p);
Poly poly_from_json(const std::string& text);

std::string form_to_json(const Form2& w);
/// Also accepts a bare builtin tag ("omega4", quoted or not), which is then
/// built over the given heights and field.
Form2 form_from_json(const std::string& text, const std::optional<Heights>& h = std::nullopt,
                     const Field& f = Field(1));

std::string admissible_to_json(const Admissible& s);
Admissible admissible_from_json(const std::string& text, const Field& fallback = Field(1));

std::string algebra_to_json(const LieAlg& l, const std::optional<AlgebraSpec>& spec = std::nullopt);
LieAlg algebra_from_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace hamlie
