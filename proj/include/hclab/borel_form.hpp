#pragma once

#include <string_view>

namespace hclab {

/// The three shapes members of the algebra take:
///   Form1  U~ with U open, U <= U~ <= closure(U), U nonempty
///   Form2  a finite set S sitting in the boundary of some U (empty interior)
///   Form3  U~ together with finitely many extra boundary points
/// The forms overlap as sets of sets; the tag reports the first that applies.
enum class FormTag { Form1, Form2, Form3 };

constexpr std::string_view to_string(FormTag tag) noexcept
{
    switch (tag) {
    case FormTag::Form1:
        return "Form1";
    case FormTag::Form2:
        return "Form2";
    case FormTag::Form3:
        return "Form3";
    }
    return "?";
}

} // namespace hclab
