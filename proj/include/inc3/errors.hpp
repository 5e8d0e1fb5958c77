#pragma once

#include <stdexcept>
#include <string>

namespace inc3 {

// Domain violations carry the name of the broken precondition. Callers that
// feed validated data never see them; the CLI maps them to exit code 2.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

struct invalid_circle : domain_error {
    explicit invalid_circle(const std::string& w) : domain_error("invalid circle: " + w) {}
};

struct collinear_points : domain_error {
    collinear_points() : domain_error("points are collinear") {}
};

struct chart_mismatch : domain_error {
    chart_mismatch() : domain_error("polynomials restricted to different charts") {}
};

struct dimension_mismatch : domain_error {
    explicit dimension_mismatch(const std::string& w) : domain_error("dimension mismatch: " + w) {}
};

struct budget_too_small : domain_error {
    explicit budget_too_small(const std::string& w) : domain_error("degree budget too small: " + w) {}
};

struct search_failed : domain_error {
    explicit search_failed(const std::string& w) : domain_error("search failed: " + w) {}
};

struct degenerate_pair : domain_error {
    degenerate_pair() : domain_error("point pair is degenerate") {}
};

struct invalid_shape : domain_error {
    explicit invalid_shape(const std::string& w) : domain_error("invalid triangle shape: " + w) {}
};

struct not_contained : domain_error {
    not_contained() : domain_error("circle is not contained in the surface") {}
};

struct at_infinity : domain_error {
    at_infinity() : domain_error("line lies in the plane at infinity") {}
};

struct origin_on_surface_required : domain_error {
    origin_on_surface_required() : domain_error("surface must pass through the origin") {}
};

struct origin_on_circle : domain_error {
    origin_on_circle() : domain_error("circle passes through the inversion center") {}
};

struct pole_on_input : domain_error {
    explicit pole_on_input(const std::string& w) : domain_error("projection pole meets input: " + w) {}
};

struct parse_error : domain_error {
    explicit parse_error(const std::string& w) : domain_error("parse error: " + w) {}
};

}  // namespace inc3
