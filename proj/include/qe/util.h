#pragma once

#include <stdexcept>
#include <string>

namespace qe {

// Root of every error raised by the library.
class qe_exception : public std::runtime_error {
public:
    explicit qe_exception(std::string const& msg) : std::runtime_error(msg) {}
};

// Malformed or ill-sorted input text. line/column are 1-based, 0 if unknown.
class parse_error : public qe_exception {
    unsigned m_line, m_column;
public:
    parse_error(std::string const& msg, unsigned line = 0, unsigned column = 0)
        : qe_exception(line ? std::to_string(line) + ":" + std::to_string(column) + ": " + msg : msg),
          m_line(line), m_column(column) {}
    unsigned line() const { return m_line; }
    unsigned column() const { return m_column; }
};

class sort_error : public qe_exception {
public:
    using qe_exception::qe_exception;
};

// The asserted literals collapse true and false, or a recorded disequality.
class inconsistency_error : public qe_exception {
public:
    using qe_exception::qe_exception;
};

// to_expr recursed deeper than the number of classes.
class extraction_budget_error : public qe_exception {
public:
    using qe_exception::qe_exception;
};

// MBP saturation exceeded its rule application cap.
class saturation_budget_error : public qe_exception {
public:
    using qe_exception::qe_exception;
};

class model_error : public qe_exception {
public:
    using qe_exception::qe_exception;
};

class search_space_error : public qe_exception {
public:
    using qe_exception::qe_exception;
};

inline void hash_combine(std::size_t& seed, std::size_t v) {
    seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}
