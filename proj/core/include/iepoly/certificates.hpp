/* JSON serialization for certificates, all integers as decimal strings,
   plus a dispatcher that re-verifies a stored certificate of any kind. */

#ifndef IEPOLY_CERTIFICATES_HPP
#define IEPOLY_CERTIFICATES_HPP

#include <string>

#include "iepoly/theorems.hpp"

namespace iepoly {

std::string to_json(const Thm3Certificate& cert);
std::string to_json(const Prop5Certificate& cert);
std::string to_json(const Thm1Certificate& cert);

Thm3Certificate thm3_from_json(const std::string& text);
Prop5Certificate prop5_from_json(const std::string& text);
Thm1Certificate thm1_from_json(const std::string& text);

struct CertificateVerification {
    std::string kind;
    VerifyOutcome outcome;
};

/* Detects the certificate kind from its "kind" field and re-verifies. */
CertificateVerification verify_certificate_json(const std::string& text);

} // namespace iepoly

#endif
