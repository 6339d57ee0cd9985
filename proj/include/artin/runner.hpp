#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "artin/lemma.hpp"

namespace artin {

/// Global limits for instance files. The defaults keep every operation well
/// inside the exact-arithmetic comfort zone; --unsafe-raise-caps switches to
/// the raised set, bounded only by what the underlying types can represent.
struct RunCaps {
    Scalar max_p = 97;
    std::size_t max_dim = 256;
    std::size_t max_n = 8;
};

inline constexpr RunCaps kDefaultRunCaps{};
inline constexpr RunCaps kRaisedRunCaps{2147483647u, 4096, 16};

struct RunFlags {
    std::uint64_t seed = 0;
    std::size_t trials = 1000;
    std::string mode = "exhaustive"; ///< default wtf mode: exhaustive | sampled
    bool timing = false;             ///< append time_ms lines (non-deterministic)
    bool raise_caps = false;
};

/// Execute an instance file: declarations build up named rings, morphisms and
/// modules; each check line writes one report block to out. Returns the exit
/// code: 0 all checks passed, 1 some check was falsified, 2 input error (the
/// diagnostic goes to err and processing stops).
int run_instance_file(const std::string& path, const RunFlags& flags,
                      std::ostream& out, std::ostream& err);
int run_instance_text(const std::string& text, const RunFlags& flags,
                      std::ostream& out, std::ostream& err);

inline constexpr int kCertificateFormatVersion = 1;

/// Self-contained text serialization: field, structure constants, module
/// actions, the lemma data x/u/W, the member m, the coefficients b and the
/// full induction trace. Everything a verifier needs, nothing else.
void write_certificate(std::ostream& out, const MembershipCertificate& cert);

/// Rebuilds the certificate through the validating constructors. Structural
/// problems (bad keywords, wrong counts) throw std::runtime_error; semantic
/// ones (values that fail algebra or instance validation) throw
/// std::logic_error subclasses from the constructors themselves.
MembershipCertificate read_certificate(std::istream& in);

} // namespace artin
