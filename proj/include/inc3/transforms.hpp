#pragma once

#include "inc3/geometry.hpp"

namespace inc3 {

// All inversion routines use the unit-power inversion centered at the origin,
// x -> x / |x|^2. Images of circles and lines are computed algebraically, as
// intersections of the plane/sphere images, never by sampling.

Point3 invert_point(const Point3& p);  // requires p != 0

// Image of a circle not passing through the origin.
Circle3 invert_circle(const Circle3& c);  // throws origin_on_circle otherwise
// Image of a circle through the origin (minus the origin itself).
Line3 invert_circle_to_line(const Circle3& c);

// Image of a line not through the origin: a circle through the origin.
// A line through the origin is its own image; callers handle that case.
Circle3 invert_line(const Line3& l);

// Substitute x -> x/|x|^2 into g, clear denominators, and strip every factor
// of |x|^2. Requires g(0) = 0, which guarantees deg of the result < 2 deg g.
// Off the origin, the result vanishes exactly where g does after inversion.
MultiPoly invert_surface(const MultiPoly& g);

struct Sphere {
    Point3 center;
    Rat r2;
    friend bool operator==(const Sphere& a, const Sphere& b) = default;
};

bool on_sphere(const Sphere& s, const Point3& p);
bool circle_on_sphere(const Circle3& c, const Sphere& s);

// Stereographic projection from `pole` (a point of the sphere) onto the plane
// through the center perpendicular to pole - center. Realized as the inversion
// centered at the pole with power 2 r^2; the map is an involution, so it also
// lifts plane points back to the sphere. Requires p != pole.
Point3 stereographic_map(const Sphere& s, const Point3& pole, const Point3& p);

// Projection of a circle lying on the sphere and avoiding the pole.
Circle3 stereographic_circle(const Sphere& s, const Point3& pole, const Circle3& c);
// Projection of a sphere circle through the pole: a line in the image plane.
Line3 stereographic_circle_to_line(const Sphere& s, const Point3& pole, const Circle3& c);

}  // namespace inc3
