#include "braggsim/presets.hpp"

#include "braggsim/constants.hpp"

namespace braggsim {

namespace {

using nlohmann::json;

constexpr double g0 = constants::default_gamma0_mhz;

// Guided-mode dispersion of the nanofiber the experiment ran on (200 nm
// radius fused silica at 852 nm, HE11: n_eff = 1.069, dn_eff/dlambda =
// -3.46e-4 per nm). The lattice period is half the *guided* trap wavelength,
// which scales the commensurability mismatch by 1 + (lambda/n_eff)|dn/dl|.
constexpr double nanofiber_dispersion = 1.276;

std::vector<Preset> make_catalog() {
    std::vector<Preset> presets;

    // Ideal ordered single chain probed across a family of trap detunings.
    presets.push_back({
        "fig1c",
        "ordered single chain, symmetric coupling, trap-detuning family 0/0.1/0.2/0.3 nm",
        json{{"coupling", "symmetric"},
             {"gamma_1d", 0.01},
             {"gamma_prime", 1.0},
             {"shift_mhz", 0.0},
             {"n_atoms", 2000},
             {"fill_factor", 1.0},
             {"n_chains", 1},
             {"trap_dispersion_factor", nanofiber_dispersion},
             {"n_realizations", 1}},
        {{"dl_0.0nm", json{{"delta_lambda_nm", 0.0}}},
         {"dl_0.1nm", json{{"delta_lambda_nm", 0.1}}},
         {"dl_0.2nm", json{{"delta_lambda_nm", 0.2}}},
         {"dl_0.3nm", json{{"delta_lambda_nm", 0.3}}}},
    });

    presets.push_back({
        "fig1d",
        "ordered single chain, chiral coupling (forward 2.8x the symmetric guided rate, "
        "forward/backward ratio 12), trap-detuning family",
        json{{"coupling", "chiral"},
             {"gamma_1d_forward", 2.8 * 0.01},
             {"gamma_1d_backward", 2.8 * 0.01 / 12.0},
             {"gamma_prime", 1.0},
             {"shift_mhz", 0.0},
             {"n_atoms", 2000},
             {"fill_factor", 1.0},
             {"n_chains", 1},
             {"trap_dispersion_factor", nanofiber_dispersion},
             {"n_realizations", 1}},
        {{"dl_0.0nm", json{{"delta_lambda_nm", 0.0}}},
         {"dl_0.1nm", json{{"delta_lambda_nm", 0.1}}},
         {"dl_0.2nm", json{{"delta_lambda_nm", 0.2}}},
         {"dl_0.3nm", json{{"delta_lambda_nm", 0.3}}}},
    });

    // Disordered two-chain lattice fitted to the measured spectra.
    const json fitted_base{{"coupling", "symmetric"},
                           {"gamma_1d", 0.007},
                           {"gamma_prime", 1.0},
                           {"shift_mhz", 3.0},
                           {"n_atoms", 2000},
                           {"fill_factor", 0.3},
                           {"n_chains", 2},
                           {"trap_dispersion_factor", nanofiber_dispersion},
                           {"n_realizations", 15}};

    {
        json p = fitted_base;
        p["delta_lambda_nm"] = 0.12;
        presets.push_back({"fig3c",
                           "disordered two-chain lattice, trap detuning 0.12 nm, "
                           "symmetric coupling",
                           p,
                           {}});
    }
    {
        json p = fitted_base;
        p["delta_lambda_nm"] = 0.2;
        presets.push_back({"fig3d",
                           "disordered two-chain lattice, trap detuning 0.2 nm, "
                           "symmetric coupling",
                           p,
                           {}});
    }
    {
        json p = fitted_base;
        p["delta_lambda_nm"] = 0.2;
        p["survival_grid"] = json::array(
            {1.0, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.125, 0.05});
        presets.push_back({"fig4-inset",
                           "peak reflectance vs remaining atom number under random loss "
                           "from the initial arrays",
                           p,
                           {}});
    }
    {
        json p = fitted_base;
        p["delta_lambda_nm"] = 0.2;
        p["coupling"] = "chiral";
        p["gamma_1d_forward"] = 2.8 * 0.007;
        p["gamma_1d_backward"] = 2.8 * 0.007 / 12.0;
        p["grid_max_mhz"] = 120.0;
        presets.push_back({"fig5b",
                           "chiral vs symmetric coupling at trap detuning 0.2 nm, "
                           "matched lattice parameters",
                           p,
                           {{"chiral", json::object()},
                            {"symmetric", json{{"coupling", "symmetric"}}}}});
    }
    {
        json p = fitted_base;
        p["delta_lambda_nm"] = 0.2;
        presets.push_back(
            {"figS2",
             "inhomogeneous-broadening family at the fitted operating point",
             p,
             {{"sd_0.0g0", json{{"sigma_delta_mhz", 0.0}}},
              {"sd_0.6g0", json{{"sigma_delta_mhz", 0.6 * g0}}},
              {"sd_1.2g0", json{{"sigma_delta_mhz", 1.2 * g0}}},
              {"sd_2.4g0", json{{"sigma_delta_mhz", 2.4 * g0}}}}});
    }
    {
        json p = fitted_base;
        p["delta_lambda_nm"] = 0.2;
        presets.push_back(
            {"figS3",
             "filling-factor family at fixed expected atom number, plus the fully "
             "filled single-chain reference",
             p,
             {{"f_0.1", json{{"fill_factor", 0.1}}},
              {"f_0.3", json{{"fill_factor", 0.3}}},
              {"f_0.5", json{{"fill_factor", 0.5}}},
              {"f_1.0", json{{"fill_factor", 1.0}}},
              {"single_full", json{{"fill_factor", 1.0}, {"n_chains", 1}}}}});
    }
    {
        json p{{"coupling", "symmetric"}, {"gamma_1d", 0.007}, {"gamma_prime", 1.0},
               {"shift_mhz", 0.0},        {"n_atoms", 2000},   {"fill_factor", 1.0},
               {"n_chains", 1},           {"n_realizations", 15},
               {"trap_dispersion_factor", nanofiber_dispersion}};
        presets.push_back(
            {"figS5",
             "thermal axial spread on and off the commensurate point "
             "(22 nm spread vs frozen positions)",
             p,
             {{"dl_0.0nm_sz_0nm", json{{"delta_lambda_nm", 0.0}, {"sigma_z_nm", 0.0}}},
              {"dl_0.0nm_sz_22nm", json{{"delta_lambda_nm", 0.0}, {"sigma_z_nm", 22.0}}},
              {"dl_0.2nm_sz_0nm", json{{"delta_lambda_nm", 0.2}, {"sigma_z_nm", 0.0}}},
              {"dl_0.2nm_sz_22nm", json{{"delta_lambda_nm", 0.2}, {"sigma_z_nm", 22.0}}}}});
    }

    return presets;
}

} // namespace

const std::vector<Preset>& preset_catalog() {
    static const std::vector<Preset> catalog = make_catalog();
    return catalog;
}

const Preset* find_preset(const std::string& name) {
    for (const auto& p : preset_catalog()) {
        if (p.name == name) {
            return &p;
        }
    }
    return nullptr;
}

} // namespace braggsim
