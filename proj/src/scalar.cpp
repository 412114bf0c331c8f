#include "gel/scalar.hpp"

#include <regex>
#include <stdexcept>

namespace gel {

Scalar &Scalar::operator*=(const Scalar &o) {
    // real operands skip the complex product; units are common in permutative words
    if (o.is_real() && is_real()) {
        if (!o.is_one())
            re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

Scalar &Scalar::operator/=(const Scalar &o) {
    if (o.is_zero())
        throw std::domain_error("division by zero scalar");
    mpq_class n = o.norm();
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
}

std::string Scalar::str() const {
    if (sgn(im_) == 0)
        return re_.get_str();
    std::string im;
    if (im_ == 1)
        im = "i";
    else if (im_ == -1)
        im = "-i";
    else
        im = im_.get_str() + " i";
    if (sgn(re_) == 0)
        return im;
    if (im[0] == '-')
        return re_.get_str() + im;
    return re_.get_str() + "+" + im;
}

namespace {

mpq_class parse_rational(const std::string &s, std::string_view whole) {
    static const std::regex rat(R"([+-]?[0-9]+(/[0-9]+)?)");
    if (!std::regex_match(s, rat))
        throw std::invalid_argument("bad scalar '" + std::string(whole) + "'");
    std::string t = s[0] == '+' ? s.substr(1) : s;
    auto slash = t.find('/');
    if (slash != std::string::npos && mpz_class(t.substr(slash + 1)) == 0)
        throw std::invalid_argument("zero denominator in '" + std::string(whole) + "'");
    mpq_class q(t);
    q.canonicalize();
    return q;
}

} // namespace

Scalar Scalar::parse(std::string_view text) {
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '\t')
            s += c;
    if (s.empty())
        throw std::invalid_argument("empty scalar");
    if (s.back() != 'i')
        return Scalar(parse_rational(s, text));

    s.pop_back();
    // split at the last sign that is not leading
    std::size_t cut = std::string::npos;
    for (std::size_t j = s.size(); j-- > 1;)
        if (s[j] == '+' || s[j] == '-') {
            cut = j;
            break;
        }
    std::string re_part = cut == std::string::npos ? "" : s.substr(0, cut);
    std::string im_part = cut == std::string::npos ? s : s.substr(cut);
    if (im_part.empty() || im_part == "+")
        im_part = "1";
    else if (im_part == "-")
        im_part = "-1";
    mpq_class re = re_part.empty() ? mpq_class(0) : parse_rational(re_part, text);
    return Scalar(re, parse_rational(im_part, text));
}

} // namespace gel
