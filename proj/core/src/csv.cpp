#include "deco/csv.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace deco::csv {

std::string format_double(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, ptr);
}

Writer::Writer(const std::string& path) : path_(path) {
    std::ofstream probe(path_, std::ios::trunc);
    if (!probe) throw std::runtime_error("csv::Writer: cannot open " + path_);
}

Writer::~Writer() {
    try {
        close();
    } catch (...) {
        // destructor must not throw; an explicit close() reports failures
    }
}

void Writer::header(std::span<const std::string_view> columns) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i > 0) buffer_ += ',';
        buffer_ += columns[i];
    }
    buffer_ += '\n';
}

void Writer::row(std::span<const double> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) buffer_ += ',';
        buffer_ += format_double(values[i]);
    }
    buffer_ += '\n';
}

void Writer::close() {
    if (!open_) return;
    open_ = false;
    std::ofstream out(path_, std::ios::trunc | std::ios::binary);
    if (!out) throw std::runtime_error("csv::Writer: cannot open " + path_);
    out.write(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
    if (!out) throw std::runtime_error("csv::Writer: write failed for " + path_);
}

} // namespace deco::csv
