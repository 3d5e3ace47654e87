#include "matlang/numeric.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

namespace matlang {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

std::optional<Rat> parse_rational(std::string_view s) {
    if (s.empty()) return std::nullopt;
    bool neg = false;
    if (s.front() == '+' || s.front() == '-') {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) return std::nullopt;

    auto slash = s.find('/');
    if (slash != std::string_view::npos) {
        std::string_view num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) return std::nullopt;
        Rat r(std::string(num) + "/" + std::string(den));
        if (r.get_den() == 0) return std::nullopt;
        r.canonicalize();
        return neg ? Rat(-r) : r;
    }

    // decimal with optional exponent
    std::string_view mantissa = s;
    long exp10 = 0;
    auto epos = s.find_first_of("eE");
    if (epos != std::string_view::npos) {
        mantissa = s.substr(0, epos);
        std::string_view es = s.substr(epos + 1);
        bool eneg = false;
        if (!es.empty() && (es.front() == '+' || es.front() == '-')) {
            eneg = es.front() == '-';
            es.remove_prefix(1);
        }
        if (!all_digits(es) || es.size() > 6) return std::nullopt;
        exp10 = std::stol(std::string(es));
        if (eneg) exp10 = -exp10;
    }

    auto dot = mantissa.find('.');
    std::string digits;
    if (dot == std::string_view::npos) {
        if (!all_digits(mantissa)) return std::nullopt;
        digits = std::string(mantissa);
    } else {
        std::string_view ip = mantissa.substr(0, dot), fp = mantissa.substr(dot + 1);
        if (ip.empty() && fp.empty()) return std::nullopt;
        if (!ip.empty() && !all_digits(ip)) return std::nullopt;
        if (!fp.empty() && !all_digits(fp)) return std::nullopt;
        digits = std::string(ip) + std::string(fp);
        exp10 -= static_cast<long>(fp.size());
    }
    if (digits.empty()) return std::nullopt;

    Rat r{mpz_class(digits)};
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
    if (exp10 >= 0)
        r *= Rat(pow10);
    else
        r /= Rat(pow10);
    r.canonicalize();
    return neg ? Rat(-r) : r;
}

std::optional<RatComplex> parse_complex(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) return std::nullopt;

    if (s.back() == 'i' || s.back() == 'I') {
        std::string_view body = s.substr(0, s.size() - 1);
        // split at the last top-level +/- that is not a leading sign or exponent sign
        size_t split = std::string_view::npos;
        for (size_t k = body.size(); k-- > 1;) {
            char c = body[k];
            if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
                split = k;
                break;
            }
        }
        if (split == std::string_view::npos) {
            // pure imaginary: "i", "-i", "2i", "3/4i"
            std::string_view imp = body;
            if (imp.empty() || imp == "+" ) return parse_rational("1").has_value()
                ? std::optional<RatComplex>(RatComplex{Rat(0), Rat(1)}) : std::nullopt;
            if (imp == "-") return RatComplex{Rat(0), Rat(-1)};
            auto im = parse_rational(imp);
            if (!im) return std::nullopt;
            return RatComplex{Rat(0), *im};
        }
        auto re = parse_rational(body.substr(0, split));
        std::string_view imp = body.substr(split);
        std::optional<Rat> im;
        if (imp == "+")
            im = Rat(1);
        else if (imp == "-")
            im = Rat(-1);
        else
            im = parse_rational(imp);
        if (!re || !im) return std::nullopt;
        return RatComplex{*re, *im};
    }

    auto re = parse_rational(s);
    if (!re) return std::nullopt;
    return RatComplex{*re, Rat(0)};
}

std::string to_string(const RatComplex& z) {
    std::string re = z.re.get_str();
    if (z.im == 0) return re;
    std::string im = z.im.get_str();
    if (z.im > 0) return re + "+" + im + "i";
    return re + im + "i";  // '-' already in im
}

std::string to_string(const FloatComplex& z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", z.real());
    std::string out = buf;
    if (z.imag() != 0.0) {
        std::snprintf(buf, sizeof buf, "%.17g", z.imag());
        std::string im = buf;
        if (!im.empty() && im.front() != '-') out += "+";
        out += im + "i";
    }
    return out;
}

}  // namespace matlang
