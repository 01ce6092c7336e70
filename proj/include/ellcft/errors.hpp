#ifndef ELLCFT_ERRORS_HPP
#define ELLCFT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ellcft {

// All library failures carry a short machine-readable code, e.g. "InvertZeroLeading".
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace ellcft

#endif
