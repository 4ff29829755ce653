#pragma once

#include "msfem/space.hpp"
#include "msfem/stepper.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace msfem {

/// Space node sitting on a mesh vertex (the lattice point r * (i, j, k)).
int vertex_node(const ScalarSpace& space, int vertex);

/// Legacy VTK ASCII unstructured grid of the mesh with point data rho,
/// re_psi, im_psi and the vector A, sampled at the mesh vertices.
void write_vtk(std::ostream& out, const ScalarField& psi, const VectorField& a, const std::string& title = "msfem");
/// Throws std::runtime_error naming `path` when the file cannot be written.
void write_vtk(const std::string& path, const ScalarField& psi, const VectorField& a);

/// Rows "t,s,rho" with x = (s, s, s), s = 0, 1/(n-1), ..., 1.
void write_line_samples_header(std::ostream& out);
void write_line_samples(std::ostream& out, const ScalarField& psi, double t, int samples);

/// Columns t, rho_1, ..., rho_p at the given points.
void write_probe_header(std::ostream& out, std::size_t num_probes);
void write_probe_row(std::ostream& out, const ScalarField& psi, double t, const std::vector<Point3>& probes);

void write_diagnostics_header(std::ostream& out);
void write_diagnostics_row(std::ostream& out, const Diagnostics& d);

/// %.16e, i.e. 17 significant digits.
std::string format_double(double v);

} // namespace msfem
