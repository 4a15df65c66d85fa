#include "iepoly/certificates.hpp"

#include <json.hpp>

namespace iepoly {

namespace {

using nlohmann::json;

json num(const Int& n) { return n.get_str(); }

Int get_int(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string())
        throw validation_error(std::string("certificate: missing integer field '") + key + "'");
    try {
        return Int(j[key].get<std::string>());
    } catch (const std::invalid_argument&) {
        throw validation_error(std::string("certificate: malformed integer in '") + key + "'");
    }
}

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw validation_error("certificate: not a JSON object");
    return j;
}

} // namespace

std::string to_json(const Thm3Certificate& cert) {
    json j;
    j["kind"] = "thm3";
    j["p"] = num(cert.p);
    j["q"] = num(cert.q);
    j["r"] = num(cert.r);
    j["a"] = num(Int(cert.a));
    j["b"] = num(cert.b);
    j["c"] = num(cert.c);
    j["P"] = num(cert.P);
    j["Q"] = num(cert.Q);
    if (cert.R)
        j["R"] = num(*cert.R);
    else
        j["R"] = nullptr;
    j["R_digits"] = cert.R_digits;
    j["phiP"] = num(cert.phiP);
    j["phiQ"] = num(cert.phiQ);
    j["i"] = num(cert.i);
    j["j"] = num(cert.j);
    j["parity_expected"] = cert.parity_expected;
    return j.dump();
}

Thm3Certificate thm3_from_json(const std::string& text) {
    json j = parse(text);
    if (j.value("kind", "") != "thm3")
        throw validation_error("certificate: kind is not 'thm3'");
    Thm3Certificate cert;
    cert.p = get_int(j, "p");
    cert.q = get_int(j, "q");
    cert.r = get_int(j, "r");
    Int a = get_int(j, "a");
    if (!a.fits_ulong_p() || a < 1)
        throw validation_error("certificate: bad exponent a");
    cert.a = a.get_ui();
    cert.b = get_int(j, "b");
    cert.c = get_int(j, "c");
    cert.P = get_int(j, "P");
    cert.Q = get_int(j, "Q");
    if (j.contains("R") && j["R"].is_string())
        cert.R = get_int(j, "R");
    cert.R_digits = j.value("R_digits", 0ul);
    cert.phiP = get_int(j, "phiP");
    cert.phiQ = get_int(j, "phiQ");
    cert.i = get_int(j, "i");
    cert.j = get_int(j, "j");
    cert.parity_expected = j.value("parity_expected", 0);
    return cert;
}

std::string to_json(const Prop5Certificate& cert) {
    json j;
    j["kind"] = "prop5";
    j["p"] = num(cert.p);
    j["q"] = num(cert.q);
    j["r"] = num(cert.r);
    j["u"] = num(cert.u);
    j["v"] = num(cert.v);
    j["w"] = num(cert.w);
    j["x_q"] = num(cert.x_q);
    j["x_r"] = num(cert.x_r);
    j["mu"] = num(cert.mu);
    j["C"] = num(cert.C);
    j["hyp_u_le_mu"] = cert.hyp_u_le_mu;
    j["hyp_q_gt_p2"] = cert.hyp_q_gt_p2;
    j["hyp_v_large"] = cert.hyp_v_large;
    j["hypotheses_ok"] = cert.hypotheses_ok;
    json roles = json::array();
    for (const auto& role : cert.roles_tried) {
        roles.push_back({{"q_candidate", num(role.q_candidate)},
                         {"q_gt_p2", role.q_gt_p2},
                         {"v_large", role.v_large}});
    }
    j["roles_tried"] = roles;
    if (cert.hypotheses_ok) {
        j["a_param"] = num(cert.a_param);
        j["ell"] = num(cert.ell);
        j["q_prime"] = num(cert.q_prime);
        j["r_prime"] = num(cert.r_prime);
        j["witness_plus"] = num(cert.witness_plus);
        j["witness_minus"] = num(cert.witness_minus);
        j["coeff_plus"] = cert.coeff_plus;
        j["coeff_minus"] = cert.coeff_minus;
        j["chi_claims_ok"] = cert.chi_claims_ok;
    }
    return j.dump();
}

Prop5Certificate prop5_from_json(const std::string& text) {
    json j = parse(text);
    if (j.value("kind", "") != "prop5")
        throw validation_error("certificate: kind is not 'prop5'");
    Prop5Certificate cert;
    cert.p = get_int(j, "p");
    cert.q = get_int(j, "q");
    cert.r = get_int(j, "r");
    cert.u = get_int(j, "u");
    cert.v = get_int(j, "v");
    cert.w = get_int(j, "w");
    cert.x_q = get_int(j, "x_q");
    cert.x_r = get_int(j, "x_r");
    cert.mu = get_int(j, "mu");
    cert.C = get_int(j, "C");
    cert.hyp_u_le_mu = j.value("hyp_u_le_mu", false);
    cert.hyp_q_gt_p2 = j.value("hyp_q_gt_p2", false);
    cert.hyp_v_large = j.value("hyp_v_large", false);
    cert.hypotheses_ok = j.value("hypotheses_ok", false);
    if (j.contains("roles_tried")) {
        for (const auto& role : j["roles_tried"]) {
            Prop5RoleCheck rc;
            rc.q_candidate = Int(role.value("q_candidate", "0"));
            rc.q_gt_p2 = role.value("q_gt_p2", false);
            rc.v_large = role.value("v_large", false);
            cert.roles_tried.push_back(rc);
        }
    }
    if (cert.hypotheses_ok) {
        cert.a_param = get_int(j, "a_param");
        cert.ell = get_int(j, "ell");
        cert.q_prime = get_int(j, "q_prime");
        cert.r_prime = get_int(j, "r_prime");
        cert.witness_plus = get_int(j, "witness_plus");
        cert.witness_minus = get_int(j, "witness_minus");
        cert.coeff_plus = j.value("coeff_plus", int64_t(0));
        cert.coeff_minus = j.value("coeff_minus", int64_t(0));
        cert.chi_claims_ok = j.value("chi_claims_ok", false);
    }
    return cert;
}

std::string to_json(const Thm1Certificate& cert) {
    json j;
    j["kind"] = "thm1";
    j["p"] = num(cert.p);
    j["q"] = num(cert.q);
    j["r"] = num(cert.r);
    j["a"] = num(Int(cert.a));
    j["epsilon_num"] = num(cert.epsilon.num);
    j["epsilon_den"] = num(cert.epsilon.den);
    j["slack_exponent"] = cert.slack_exponent;
    j["P"] = num(cert.P);
    j["phiP"] = num(cert.phiP);
    j["i1"] = num(cert.i1);
    j["j1"] = num(cert.j1);
    j["k1"] = num(cert.k1);
    j["b"] = num(cert.b);
    j["Q"] = num(cert.Q);
    j["phiQ"] = num(cert.phiQ);
    j["d_step"] = num(cert.d_step);
    j["d_p1q1"] = num(cert.d_p1q1);
    j["y_R"] = num(cert.y_R);
    j["t2"] = num(cert.t2);
    j["j2"] = num(cert.j2);
    j["k2"] = num(cert.k2);
    j["c"] = num(cert.c);
    j["x_Q"] = num(cert.x_Q);
    j["x_R"] = num(cert.x_R);
    j["u"] = num(cert.u);
    j["v"] = num(cert.v);
    j["C"] = num(cert.C);
    j["q_prime_sign"] = cert.q_prime_sign;
    j["r_prime_sign"] = cert.r_prime_sign;
    j["witness_plus"] = num(cert.witness_plus);
    j["witness_minus"] = num(cert.witness_minus);
    j["coeff_plus"] = cert.coeff_plus;
    j["coeff_minus"] = cert.coeff_minus;
    return j.dump();
}

Thm1Certificate thm1_from_json(const std::string& text) {
    json j = parse(text);
    if (j.value("kind", "") != "thm1")
        throw validation_error("certificate: kind is not 'thm1'");
    Thm1Certificate cert;
    cert.p = get_int(j, "p");
    cert.q = get_int(j, "q");
    cert.r = get_int(j, "r");
    Int a = get_int(j, "a");
    if (!a.fits_ulong_p() || a < 1)
        throw validation_error("certificate: bad exponent a");
    cert.a = a.get_ui();
    cert.epsilon.num = get_int(j, "epsilon_num");
    cert.epsilon.den = get_int(j, "epsilon_den");
    cert.slack_exponent = j.value("slack_exponent", 6l);
    cert.P = get_int(j, "P");
    cert.phiP = get_int(j, "phiP");
    cert.i1 = get_int(j, "i1");
    cert.j1 = get_int(j, "j1");
    cert.k1 = get_int(j, "k1");
    cert.b = get_int(j, "b");
    cert.Q = get_int(j, "Q");
    cert.phiQ = get_int(j, "phiQ");
    cert.d_step = get_int(j, "d_step");
    cert.d_p1q1 = get_int(j, "d_p1q1");
    cert.y_R = get_int(j, "y_R");
    cert.t2 = get_int(j, "t2");
    cert.j2 = get_int(j, "j2");
    cert.k2 = get_int(j, "k2");
    cert.c = get_int(j, "c");
    cert.x_Q = get_int(j, "x_Q");
    cert.x_R = get_int(j, "x_R");
    cert.u = get_int(j, "u");
    cert.v = get_int(j, "v");
    cert.C = get_int(j, "C");
    cert.q_prime_sign = j.value("q_prime_sign", +1);
    cert.r_prime_sign = j.value("r_prime_sign", +1);
    cert.witness_plus = get_int(j, "witness_plus");
    cert.witness_minus = get_int(j, "witness_minus");
    cert.coeff_plus = j.value("coeff_plus", int64_t(0));
    cert.coeff_minus = j.value("coeff_minus", int64_t(0));
    return cert;
}

CertificateVerification verify_certificate_json(const std::string& text) {
    json j = parse(text);
    std::string kind = j.value("kind", "");
    CertificateVerification result;
    result.kind = kind;
    if (kind == "thm3")
        result.outcome = verify_thm3(thm3_from_json(text));
    else if (kind == "prop5")
        result.outcome = verify_prop5(prop5_from_json(text));
    else if (kind == "thm1")
        result.outcome = verify_thm1(thm1_from_json(text));
    else
        throw validation_error("certificate: unknown kind '" + kind + "'");
    return result;
}

} // namespace iepoly
