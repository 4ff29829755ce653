#include "msfem/output.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace msfem {

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

int vertex_node(const ScalarSpace& space, int vertex)
{
    const auto g = space.mesh().vertex_grid(vertex);
    const int r = space.degree();
    const int n1 = space.lattice_segments() + 1;
    return (r * g[0] * n1 + r * g[1]) * n1 + r * g[2];
}

void write_vtk(std::ostream& out, const ScalarField& psi, const VectorField& a, const std::string& title)
{
    const ScalarSpace& ss = *psi.space;
    const VectorSpace& vs = *a.space;
    const Mesh& mesh = ss.mesh();
    const int nv = mesh.num_vertices();
    const int nc = mesh.num_cells();

    out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << nv << " double\n";
    for (const Point3& p : mesh.vertices())
        out << format_double(p[0]) << ' ' << format_double(p[1]) << ' ' << format_double(p[2]) << '\n';
    out << "CELLS " << nc << ' ' << 5 * nc << '\n';
    for (const auto& c : mesh.cells()) out << "4 " << c[0] << ' ' << c[1] << ' ' << c[2] << ' ' << c[3] << '\n';
    out << "CELL_TYPES " << nc << '\n';
    for (int c = 0; c < nc; ++c) out << "10\n";

    out << "POINT_DATA " << nv << '\n';
    auto scalar = [&](const char* name, auto value) {
        out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
        for (int v = 0; v < nv; ++v) out << format_double(value(psi.coeffs[vertex_node(ss, v)])) << '\n';
    };
    scalar("rho", [](cplx z) { return std::norm(z); });
    scalar("re_psi", [](cplx z) { return z.real(); });
    scalar("im_psi", [](cplx z) { return z.imag(); });
    out << "VECTORS A double\n";
    for (int v = 0; v < nv; ++v) {
        const int node = vertex_node(ss, v);
        out << format_double(a.coeffs[vs.dof(node, 0)]) << ' ' << format_double(a.coeffs[vs.dof(node, 1)]) << ' '
            << format_double(a.coeffs[vs.dof(node, 2)]) << '\n';
    }
}

void write_vtk(const std::string& path, const ScalarField& psi, const VectorField& a)
{
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_vtk(f, psi, a);
    f.flush();
    if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

void write_line_samples_header(std::ostream& out) { out << "t,s,rho\n"; }

void write_line_samples(std::ostream& out, const ScalarField& psi, double t, int samples)
{
    for (int i = 0; i < samples; ++i) {
        const double s = samples > 1 ? static_cast<double>(i) / (samples - 1) : 0.5;
        const double rho = std::norm(evaluate_at(psi, {s, s, s}).value);
        out << format_double(t) << ',' << format_double(s) << ',' << format_double(rho) << '\n';
    }
}

void write_probe_header(std::ostream& out, std::size_t num_probes)
{
    out << 't';
    for (std::size_t i = 1; i <= num_probes; ++i) out << ",rho_" << i;
    out << '\n';
}

void write_probe_row(std::ostream& out, const ScalarField& psi, double t, const std::vector<Point3>& probes)
{
    out << format_double(t);
    for (const Point3& x : probes) out << ',' << format_double(std::norm(evaluate_at(psi, x).value));
    out << '\n';
}

void write_diagnostics_header(std::ostream& out)
{
    out << "k,t,mass,energy,energy_imag,psi_H1,A_H1,maxwell_iterations,maxwell_residual,"
           "schrodinger_iterations,schrodinger_residual\n";
}

void write_diagnostics_row(std::ostream& out, const Diagnostics& d)
{
    out << d.k << ',' << format_double(d.t) << ',' << format_double(d.mass) << ',' << format_double(d.energy) << ','
        << format_double(d.energy_imag) << ',' << format_double(d.psi_h1) << ',' << format_double(d.a_h1) << ','
        << d.maxwell.iterations << ',' << format_double(d.maxwell.relative_residual) << ','
        << d.schrodinger.iterations << ',' << format_double(d.schrodinger.relative_residual) << '\n';
}

} // namespace msfem
