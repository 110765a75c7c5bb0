#pragma once

// "QS1" state files (UTF-8 text, '\n' line ends):
//
//   qs1 pure <n>     followed by 2^n lines "<re> <im>" in basis order, or
//   qs1 mixed <n>    followed by 4^n lines "<re> <im>" in row-major order.
//
// Pure amplitudes are renormalized on load; mixed matrices must already
// satisfy the density-operator invariants.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>

#include "qcorr/state.hpp"

namespace qcorr {

using LoadedState = std::variant<PureState, DensityOperator>;

inline DensityOperator as_density(const LoadedState& s) {
    if (const auto* p = std::get_if<PureState>(&s)) return p->to_density();
    return std::get<DensityOperator>(s);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline double parse_real(std::string_view token, std::size_t line_no) {
    double v = 0.0;
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": bad number '" +
                                               std::string(token) + "'");
    }
    if (!std::isfinite(v)) {
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": non-finite value");
    }
    return v;
}

inline Complex parse_entry(std::string_view line, std::size_t line_no) {
    line = trim(line);
    const auto split = line.find_first_of(" \t");
    if (split == std::string_view::npos) {
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected '<re> <im>'");
    }
    const std::string_view re = line.substr(0, split);
    const std::string_view im = trim(line.substr(split));
    if (im.empty() || im.find_first_of(" \t") != std::string_view::npos) {
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected '<re> <im>'");
    }
    return {parse_real(re, line_no), parse_real(im, line_no)};
}

inline void write_entry(std::ostream& out, Complex z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", z.real(), z.imag());
    out << buf;
}

}  // namespace detail

inline LoadedState read_qs1(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorKind::ParseError, "empty input");
    std::istringstream header{std::string(detail::trim(line))};
    std::string magic, kind, extra;
    int n = 0;
    if (!(header >> magic >> kind >> n) || (header >> extra) || magic != "qs1" ||
        (kind != "pure" && kind != "mixed")) {
        throw Error(ErrorKind::ParseError, "header must be 'qs1 pure <n>' or 'qs1 mixed <n>'");
    }
    if (n < 1) throw Error(ErrorKind::ParseError, "qubit count must be >= 1");
    if (n > kMaxQubits || (kind == "mixed" && n > 12)) throw Error(ErrorKind::TooLarge, "register too large");

    const bool pure = kind == "pure";
    const std::size_t d = dimension_of(n);
    const std::size_t expected = pure ? d : d * d;
    ComplexVector entries(static_cast<Eigen::Index>(expected));
    std::size_t count = 0;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (count == expected) {
            if (detail::trim(line).empty() && in.peek() == std::char_traits<char>::eof()) break;
            throw Error(ErrorKind::ParseError, "more than " + std::to_string(expected) + " entries");
        }
        entries(static_cast<Eigen::Index>(count++)) = detail::parse_entry(line, line_no);
    }
    if (count != expected) {
        throw Error(ErrorKind::ParseError,
                    "expected " + std::to_string(expected) + " entries, found " + std::to_string(count));
    }

    if (pure) {
        try {
            return PureState::normalized(n, std::move(entries));
        } catch (const Error& e) {
            throw Error(ErrorKind::ParseError, e.what());
        }
    }
    const auto di = static_cast<Eigen::Index>(d);
    ComplexMatrix m(di, di);
    for (Eigen::Index r = 0; r < di; ++r) {
        for (Eigen::Index c = 0; c < di; ++c) m(r, c) = entries(r * di + c);
    }
    try {
        return DensityOperator::from_matrix(std::move(m));
    } catch (const Error& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
}

inline LoadedState read_qs1_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
    return read_qs1(in);
}

inline LoadedState parse_qs1(const std::string& text) {
    std::istringstream in(text);
    return read_qs1(in);
}

inline void write_qs1(std::ostream& out, const PureState& psi) {
    out << "qs1 pure " << psi.num_qubits() << '\n';
    for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) detail::write_entry(out, psi.amplitudes()(i));
}

inline void write_qs1(std::ostream& out, const DensityOperator& rho) {
    out << "qs1 mixed " << rho.num_qubits() << '\n';
    for (Eigen::Index r = 0; r < rho.dim(); ++r) {
        for (Eigen::Index c = 0; c < rho.dim(); ++c) detail::write_entry(out, rho(r, c));
    }
}

template <class State>
std::string to_qs1(const State& s) {
    std::ostringstream out;
    write_qs1(out, s);
    return out.str();
}

}  // namespace qcorr
