#pragma once

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>

#include "randla/circulant.hpp"
#include "randla/matrix.hpp"

namespace randla {

// Fixture text format.
//
//   rows cols field
//   e11 e12 ...
//
// field is "real" or "complex"; complex entries are written "re+imj" with no
// spaces, e.g. 1.5-2.25j. Entries are whitespace separated, layout free.

namespace detail {

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline std::string format_entry(double x) { return format_double(x); }

inline std::string format_entry(Complex z) {
    std::string s = format_double(z.real());
    s += (z.imag() < 0.0 || (z.imag() == 0.0 && std::signbit(z.imag()))) ? "-" : "+";
    s += format_double(std::abs(z.imag()));
    s += 'j';
    return s;
}

inline double parse_real_entry(const std::string& tok) {
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw IoError("bad real entry: " + tok);
    return v;
}

inline Complex parse_complex_entry(const std::string& tok) {
    if (tok.empty() || tok.back() != 'j') throw IoError("bad complex entry: " + tok);
    std::string body = tok.substr(0, tok.size() - 1);
    // split at the sign that separates real and imaginary parts (skip a
    // leading sign and signs inside exponents)
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i < body.size(); ++i) {
        char c = body[i];
        if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') split = i;
    }
    if (split == std::string::npos) throw IoError("bad complex entry: " + tok);
    double re = parse_real_entry(body.substr(0, split));
    std::string im_part = body.substr(split);
    double im = (im_part.size() == 1) ? (im_part[0] == '-' ? -1.0 : 1.0) : parse_real_entry(im_part);
    return Complex(re, im);
}

}  // namespace detail

template <ScalarField T>
void write_matrix(std::ostream& os, const Matrix<T>& a) {
    os << a.rows() << ' ' << a.cols() << ' ' << (field<T>::is_complex ? "complex" : "real") << '\n';
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (j) os << ' ';
            os << detail::format_entry(a(i, j));
        }
        os << '\n';
    }
}

using AnyMatrix = std::variant<RealMatrix, ComplexMatrix>;

inline AnyMatrix read_matrix(std::istream& is) {
    std::size_t rows = 0, cols = 0;
    std::string fieldname;
    if (!(is >> rows >> cols >> fieldname)) throw IoError("bad matrix header");
    if (rows == 0 || cols == 0) throw IoError("matrix dimensions must be positive");
    if (fieldname == "real") {
        RealMatrix m(rows, cols);
        std::string tok;
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                if (!(is >> tok)) throw IoError("matrix body truncated");
                m(i, j) = detail::parse_real_entry(tok);
            }
        return m;
    }
    if (fieldname == "complex") {
        ComplexMatrix m(rows, cols);
        std::string tok;
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                if (!(is >> tok)) throw IoError("matrix body truncated");
                m(i, j) = detail::parse_complex_entry(tok);
            }
        return m;
    }
    throw IoError("unknown field: " + fieldname);
}

inline AnyMatrix read_matrix_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open " + path);
    return read_matrix(f);
}

// Circulant fixtures: "circulant n field" followed by the n first-column
// entries.

template <ScalarField T>
void write_circulant(std::ostream& os, const CirculantMatrix<T>& c) {
    os << "circulant " << c.size() << ' ' << (field<T>::is_complex ? "complex" : "real") << '\n';
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) os << ' ';
        os << detail::format_entry(c.first_column()[i]);
    }
    os << '\n';
}

using AnyCirculant = std::variant<RealCirculant, ComplexCirculant>;

inline AnyCirculant read_circulant(std::istream& is) {
    std::string tag, fieldname;
    std::size_t n = 0;
    if (!(is >> tag >> n >> fieldname) || tag != "circulant" || n == 0)
        throw IoError("bad circulant header");
    std::string tok;
    if (fieldname == "real") {
        std::vector<double> c(n);
        for (double& v : c) {
            if (!(is >> tok)) throw IoError("circulant body truncated");
            v = detail::parse_real_entry(tok);
        }
        return RealCirculant(std::move(c));
    }
    if (fieldname == "complex") {
        std::vector<Complex> c(n);
        for (Complex& v : c) {
            if (!(is >> tok)) throw IoError("circulant body truncated");
            v = detail::parse_complex_entry(tok);
        }
        return ComplexCirculant(std::move(c));
    }
    throw IoError("unknown field: " + fieldname);
}

}  // namespace randla
