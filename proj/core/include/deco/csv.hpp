// csv.hpp — Round-trip-exact CSV output
#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace deco::csv {

// Shortest decimal string that round-trips to the same double.
std::string format_double(double value);

class Writer {
public:
    explicit Writer(const std::string& path);
    ~Writer();

    void header(std::span<const std::string_view> columns);
    void row(std::span<const double> values);
    void close();

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
    std::string buffer_;
    bool open_ = true;
};

} // namespace deco::csv
