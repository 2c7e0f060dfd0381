"""
Configurações globais do pacote
"""

# Configurações da aplicação
APP_CONFIG = {
    "name": "loopframe",
    "description": "Famílias de imersões de curvatura constante via grupos de laços",
    "version": "0.1.0",
    "config_env_var": "LOOPFRAME_CONFIG",
    "log_level_env_var": "LOOPFRAME_LOG_LEVEL",
}

# Limites estruturais dos laços
LOOP_CONFIG = {
    "max_dimension": 12,
    "min_degree": -4,
    "max_degree": 4,
    "zero_tolerance": 1e-14,  # coeficientes descartados ao truncar
}

# Tolerâncias (todas positivas; sobrescritas por --tol-*)
TOLERANCES = {
    "involution": 1e-12,
    "group": 1e-10,
    "reality": 1e-10,
    "quadric": 1e-8,
    "mc_threshold": 1e-6,
    "curvature_rel": 1e-2,
    "metric_ratio_rel": 1e-6,
    "rank_singular": 1e-10,
    "degenerate_metric": 1e-6,
    "frame_oracle": 1e-6,
    "roundtrip": 1e-6,
    "birkhoff": 1e-8,
    "support": 1e-10,
    "dpw_dominance": 1e-6,
    "pluriharmonic": 1e-5,
    "reality_on_m": 1e-8,
    "cr": 1e-6,
    "gluing": 1e-6,
    "fixed_frames": 1e-8,
    "totally_geodesic": 1e-8,
}

# Grade padrão do domínio (produto de intervalos)
GRID_CONFIG = {
    "counts": (64, 64),
    "ranges": ((-1.0, 1.0), (-1.0, 1.0)),
    "base_point": None,  # None: ponto mais próximo da origem
    "min_count": 2,
}

# Integrador de referenciais (Magnus de 2 estágios)
INTEGRATOR_CONFIG = {
    "project_to_group": True,
    "lie_algebra_tolerance": 1e-9,
    "spline_degree": 5,  # interpolação de conexões amostradas nos nós de Gauss
    "sampled_residual_factor": 10.0,  # limiar de integrabilidade: max(mc_threshold, fator·h²)
    "analytic_step": 1e-3,  # passo da derivada de 4ª ordem para formas fechadas
}

# Fatoração de Birkhoff e DPW
FACTORIZATION_CONFIG = {
    "samples": 256,
    "bandwidth": 16,
    "condition_threshold": 1e8,
    "spectral_tail_tolerance": 1e-10,  # aviso
    "spectral_tail_limit": 1e-6,  # falha: aliasing acima das tolerâncias de ida e volta
    "patch_size": 8,
    "dpw_samples": 32,
}

# Faixa complexa M_ε
STRIP_CONFIG = {
    "eps": 0.1,
    "imaginary_samples": 9,
    "max_halvings": 6,
    "winding_samples": 2048,
    "winding_batch": 512,  # fatias por avaliação vetorizada
    "blowup": 1e12,
    "min_samples": 3,
    "derivative_accuracy": 4,
    "cr_truncation_factor": 1.0,
}

# Pertinência às faixas de λ
LAMBDA_RANGE_CONFIG = {
    "axis_tolerance": 1e-12,
    "exclusion_radius": 1e-6,
}

# Exportação de malhas
EXPORT_CONFIG = {
    "formats": ["csv", "obj", "vtk"],
    "float_format": "%.15g",
    "precision": 15,
    "obj_projection": (0, 1, 2),
    "vtk_scalar_coordinate": 3,
}

# Limiar de resíduo exibido em relatórios
REPORT_CONFIG = {
    "precision": 6,
    "metric_points": 10,
}

# Domínio padrão de `extend` (a faixa multiplica a grade por imaginary_samples²)
EXTEND_CONFIG = {
    "grid": "9x9",
    "ranges": ((-0.15, 0.15), (-0.15, 0.15)),
    "frames_lambda": 1.0,  # amostra gravada no .npz
}
