#include "feedcanon/scalar.hpp"

namespace feedcanon {

mpq_class parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
    mpq_class q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
        throw std::invalid_argument("parse_rational: bad rational '" + s + "'");
    if (q.get_den() == 0) throw std::invalid_argument("parse_rational: zero denominator");
    q.canonicalize();
    return q;
}

std::string rational_to_string(const mpq_class& q) { return q.get_str(); }

std::string rat_to_token(const Rat& z) {
    if (z.im == 0) return z.re.get_str();
    std::string s = z.re.get_str();
    if (z.im > 0) s += "+";
    s += z.im.get_str();
    s += "i";
    return s;
}

Rat parse_rat_token(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_rat_token: empty string");
    if (s.back() != 'i') return Rat(parse_rational(s));
    // "re±imi": the separating sign is the first +/- after position 0,
    // since "p/q" components carry a sign only in front.
    size_t split = std::string::npos;
    for (size_t k = 1; k + 1 < s.size(); ++k)
        if (s[k] == '+' || s[k] == '-') {
            split = k;
            break;
        }
    if (split == std::string::npos)
        throw std::invalid_argument("parse_rat_token: bad token '" + s + "'");
    const std::string re = s.substr(0, split);
    std::string im = s.substr(split, s.size() - split - 1);
    if (im.size() > 1 && im[0] == '+') im.erase(0, 1);
    return Rat(parse_rational(re), parse_rational(im));
}

}  // namespace feedcanon
