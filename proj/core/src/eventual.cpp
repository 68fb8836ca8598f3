#include <hofsearch/eventual.hpp>

#include <sstream>
#include <stdexcept>

namespace hofsearch {
namespace {

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

/// p(k - q)
IntPolynomial translate(const IntPolynomial& p, const BigInt& q) {
  const auto& c = p.coefficients();
  std::vector<BigInt> out(c.size(), BigInt(0));
  for (std::size_t i = 0; i < c.size(); ++i) {
    BigInt mq = -q;
    for (std::size_t j = 0; j <= i; ++j) {
      BigInt pw;
      mpz_pow_ui(pw.get_mpz_t(), mq.get_mpz_t(), static_cast<unsigned long>(i - j));
      out[j] += c[i] * binomial(i, j) * pw;
    }
  }
  return IntPolynomial(out, PolyVar::K);
}

std::string index_text(std::string_view name, std::int64_t m, std::int64_t offset) {
  std::ostringstream out;
  out << name << "(" << m << "k";
  if (offset > 0) out << " + " << offset;
  if (offset < 0) out << " - " << -offset;
  out << ")";
  return out.str();
}

}  // namespace

ResidueForm ResidueForm::constant(const BigInt& v) {
  ResidueForm f;
  f.kind = Kind::Constant;
  f.value = v;
  return f;
}

ResidueForm ResidueForm::linear(const BigInt& slope, const BigInt& intercept) {
  ResidueForm f;
  f.kind = Kind::Linear;
  f.slope = slope;
  f.intercept = intercept;
  return f;
}

ResidueForm ResidueForm::recurrent(IntPolynomial poly, std::vector<TermRef> fixed, std::vector<LagRef> refs) {
  ResidueForm f;
  f.kind = Kind::Recurrent;
  f.poly = std::move(poly);
  f.fixed_terms = std::move(fixed);
  f.refs = std::move(refs);
  return f;
}

std::optional<BigInt> EventualSolution::expected(std::int64_t n,
                                                 const std::function<BigInt(std::int64_t)>& term) const {
  const std::int64_t m = period();
  if (m == 0) throw std::invalid_argument("empty eventual solution");
  const std::int64_t k = n / m;
  const ResidueForm& f = residues[static_cast<std::size_t>(n % m)];
  switch (f.kind) {
    case ResidueForm::Kind::Constant:
      return f.value;
    case ResidueForm::Kind::Linear:
      return f.slope * k + f.intercept;
    case ResidueForm::Kind::Recurrent: {
      BigInt v = f.poly.evaluate(k);
      for (const auto& t : f.fixed_terms) {
        if (t.index >= n) return std::nullopt;
        v += t.coeff * term(t.index);
      }
      for (const auto& r : f.refs) {
        std::int64_t j = m * (k - r.lag) + r.residue;
        if (j >= n) return std::nullopt;
        v += r.coeff * term(j);
      }
      return v;
    }
  }
  return std::nullopt;
}

EventualSolution EventualSolution::delayed(std::int64_t s) const {
  if (s < 0) throw std::invalid_argument("delay must be nonnegative");
  const std::int64_t m = period();
  EventualSolution out;
  out.residues.resize(residues.size());
  for (std::int64_t rp = 0; rp < m; ++rp) {
    // Q'(mk + rp) = Q(mk + rp - s) = Q(m(k - q) + r)
    std::int64_t r = ((rp - s) % m + m) % m;
    std::int64_t q = (r - (rp - s)) / m;
    const ResidueForm& f = residues[static_cast<std::size_t>(r)];
    ResidueForm g = f;
    switch (f.kind) {
      case ResidueForm::Kind::Constant:
        break;
      case ResidueForm::Kind::Linear:
        g.intercept = f.intercept - f.slope * q;
        break;
      case ResidueForm::Kind::Recurrent:
        g.poly = translate(f.poly, q);
        for (auto& t : g.fixed_terms) t.index += s;
        for (auto& ref : g.refs) {
          // Q(m(k - q - lag) + r2) = Q'(m(k - q - lag) + r2 + s)
          std::int64_t r2 = ref.residue;
          std::int64_t r2p = ((r2 + s) % m + m) % m;
          ref.lag = q + ref.lag - (r2 + s - r2p) / m;
          ref.residue = static_cast<int>(r2p);
        }
        break;
    }
    out.residues[static_cast<std::size_t>(rp)] = std::move(g);
  }
  return out;
}

std::string EventualSolution::to_string(std::string_view name) const {
  std::ostringstream out;
  const std::int64_t m = period();
  for (std::int64_t r = 0; r < m; ++r) {
    const ResidueForm& f = residues[static_cast<std::size_t>(r)];
    out << index_text(name, m, r) << " = ";
    switch (f.kind) {
      case ResidueForm::Kind::Constant:
        out << f.value.get_str();
        break;
      case ResidueForm::Kind::Linear: {
        IntPolynomial p({f.intercept, f.slope}, PolyVar::K);
        out << p.to_string();
        break;
      }
      case ResidueForm::Kind::Recurrent: {
        bool first = true;
        auto sep = [&](const BigInt& c) {
          if (first) {
            if (c < 0) out << "-";
          } else {
            out << (c < 0 ? " - " : " + ");
          }
          first = false;
          BigInt mag = abs(c);
          if (mag != 1) out << mag.get_str() << "*";
        };
        for (const auto& ref : f.refs) {
          sep(ref.coeff);
          out << index_text(name, m, ref.residue - m * ref.lag);
        }
        for (const auto& t : f.fixed_terms) {
          sep(t.coeff);
          out << name << "(" << t.index << ")";
        }
        if (!f.poly.is_zero() || first) {
          std::string p = f.poly.to_string();
          if (first) {
            out << p;
          } else if (p[0] == '-') {
            out << " - " << p.substr(1);
          } else {
            out << " + " << p;
          }
        }
        break;
      }
    }
    if (r + 1 < m) out << "\n";
  }
  return out.str();
}

}  // namespace hofsearch
