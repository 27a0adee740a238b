#pragma once

#include <string>

#include "epml/material.hpp"
#include "epml/mode/interface_system.hpp"

namespace epml {

/// angle,Sx,Sy,branch rows over n_angles directions (branch 0 = quasi-P).
void emit_slowness_csv(const std::string& path, const MaterialParams& m,
                       int n_angles);

/// angle,branch,vpx_vgx,flagged rows; returns overall admissibility.
bool emit_geometric_csv(const std::string& path, const MaterialParams& m,
                        int n_angles);

/// kx,ky,omega_p,omega_s rows over n_angles unit directions.
void emit_dispersion_roots_csv(const std::string& path, const MaterialParams& m,
                               int n_angles);

/// xi,absF rows of |F(i xi + eps, kx)| over [xi_lo, xi_hi].
void emit_interface_det_scan_csv(const std::string& path,
                                 const InterfaceSystem& sys, double kx,
                                 double xi_lo, double xi_hi, int n,
                                 double sigma = 0.0, double alpha = 0.0);

/// xi,sigma,alpha,re_s,im_s rows (two per xi) of the PML root map.
void emit_pml_root_map_csv(const std::string& path, double xi_lo, double xi_hi,
                           int n, double sigma, double alpha);

}  // namespace epml
