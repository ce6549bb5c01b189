"""
Modelo Estadístico Características → Fidelidad
==============================================

Regresión lineal regularizada sobre las 24 características:
- Estandarización de columnas y ajuste ridge con solución cerrada
- Selección de λ por validación cruzada de 5 pliegues
- R², barrido de valores singulares (PCA) con corte 1/50
- Divisiones 80/20 sembradas, exclusión por familia y transferencia
  entre "backends" (presets de ruido)
- Correlaciones de Pearson por característica

Autor: Proyecto Probabilidades
Fecha: 18 de octubre de 2026
"""

import math
import warnings
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy import stats
from sklearn.decomposition import PCA
from sklearn.linear_model import Ridge
from sklearn.metrics import r2_score
from sklearn.model_selection import GridSearchCV, KFold, train_test_split
from sklearn.pipeline import Pipeline
from sklearn.preprocessing import StandardScaler

from caracteristicas_dinamicas import NOMBRES_CARACTERISTICAS


ESQUEMA = "table2-v1"
COLUMNAS_TODAS: List[str] = list(NOMBRES_CARACTERISTICAS)
COLUMNAS_SIN_NORMALIZAR: List[str] = list(NOMBRES_CARACTERISTICAS[:7])
COLUMNAS_SOTA: List[str] = ["f00_depth_noff", "f06_n_total", "g2q"]
CONFIGURACIONES = {"all": COLUMNAS_TODAS, "unnormalized": COLUMNAS_SIN_NORMALIZAR,
                   "sota_unnormalized": COLUMNAS_SOTA}
REJILLA_LAMBDA = np.logspace(-4, 0, 9)
CLAVES_FILA = ["benchmark", "family", "n", "seed"]


@dataclass
class ConjuntoDatos:
    """
    Matriz de características, vector de fidelidades y metadatos por fila

    Parameters:
    -----------
    X : pd.DataFrame
        Filas = instancias, columnas en orden fijo
    y : np.ndarray
        Fidelidades
    meta : pd.DataFrame
        family, n, seed, backend por fila
    """
    X: pd.DataFrame
    y: np.ndarray
    meta: pd.DataFrame = field(default_factory=pd.DataFrame)

    def __post_init__(self):
        self.y = np.asarray(self.y, dtype=float)
        if len(self.X) != len(self.y):
            raise ValueError(f"❌ Filas inconsistentes: X={len(self.X)}, y={len(self.y)}")
        if not self.meta.empty and len(self.meta) != len(self.y):
            raise ValueError("❌ Los metadatos no coinciden con las filas")
        if self.X.isna().any().any() or np.isnan(self.y).any():
            raise ValueError("❌ El conjunto de datos tiene entradas faltantes")

    @property
    def columnas(self) -> List[str]:
        return list(self.X.columns)

    def __len__(self) -> int:
        return len(self.y)

    def filas(self, indices: Sequence[int]) -> "ConjuntoDatos":
        indices = list(indices)
        meta = self.meta.iloc[indices].reset_index(drop=True) if not self.meta.empty else self.meta
        return ConjuntoDatos(self.X.iloc[indices].reset_index(drop=True), self.y[indices], meta)

    def seleccionar(self, columnas: Sequence[str]) -> "ConjuntoDatos":
        faltan = [c for c in columnas if c not in self.X.columns]
        if faltan:
            raise ValueError(f"❌ Columnas ausentes en el conjunto: {faltan}")
        return ConjuntoDatos(self.X[list(columnas)].copy(), self.y.copy(), self.meta)


@dataclass
class ResultadoAjuste:
    """Coeficientes en el espacio estandarizado con las medias y escalas usadas."""
    lam: float
    medias: np.ndarray
    escalas: np.ndarray
    coef: np.ndarray
    intercepto: float
    r2_entrenamiento: float
    columnas: List[str]

    def predecir(self, X: pd.DataFrame, recortar: bool = False) -> np.ndarray:
        """Predicción cruda; `recortar` la limita a [0, 1] para reportes."""
        Z = (np.asarray(X[self.columnas], dtype=float) - self.medias) / self.escalas
        yhat = Z @ self.coef + self.intercepto
        return np.clip(yhat, 0.0, 1.0) if recortar else yhat

    @property
    def coef_original(self) -> np.ndarray:
        """Coeficientes en las unidades originales de cada columna."""
        return self.coef / self.escalas

    def a_dict(self) -> dict:
        return {"lambda": self.lam, "means": self.medias.tolist(), "scales": self.escalas.tolist(),
                "coef": self.coef.tolist(), "intercept": self.intercepto,
                "columns": list(self.columnas), "train_r2": self.r2_entrenamiento,
                "schema": ESQUEMA}

    @classmethod
    def desde_dict(cls, datos: dict) -> "ResultadoAjuste":
        if datos.get("schema") != ESQUEMA:
            raise ValueError(f"❌ Esquema de modelo incompatible: {datos.get('schema')}")
        return cls(float(datos["lambda"]), np.array(datos["means"], dtype=float),
                   np.array(datos["scales"], dtype=float), np.array(datos["coef"], dtype=float),
                   float(datos["intercept"]), float(datos.get("train_r2", float("nan"))),
                   list(datos.get("columns", COLUMNAS_TODAS)))


# ============================================================
# Operaciones básicas
# ============================================================

def standardize(d: ConjuntoDatos) -> Tuple[ConjuntoDatos, np.ndarray, np.ndarray]:
    """
    Columnas con media 0 y varianza 1; las constantes quedan en 0 con escala 1

    Returns:
    --------
    Tuple[ConjuntoDatos, np.ndarray, np.ndarray]
        (datos estandarizados, medias, escalas)
    """
    if len(d) < 2:
        raise ValueError("❌ Se requieren al menos 2 filas para estandarizar")
    escalador = StandardScaler().fit(d.X.values.astype(float))
    Z = pd.DataFrame(escalador.transform(d.X.values.astype(float)), columns=d.columnas)
    return ConjuntoDatos(Z, d.y.copy(), d.meta), escalador.mean_.copy(), escalador.scale_.copy()


def r2(yhat: Sequence[float], y: Sequence[float]) -> float:
    """Coeficiente de determinación 1 − SS_res/SS_tot (puede ser negativo)."""
    yhat, y = np.asarray(yhat, dtype=float), np.asarray(y, dtype=float)
    if len(yhat) != len(y) or len(y) < 2:
        raise ValueError("❌ r2 requiere dos vectores de igual longitud ≥ 2")
    if np.var(y) == 0:
        raise ValueError("❌ r2 no está definido para y con varianza cero")
    return float(r2_score(y, yhat))


def ridge_fit(d: ConjuntoDatos, lam: float) -> ResultadoAjuste:
    """
    Ridge con intercepto no penalizado, resuelto por ecuaciones normales

    Parameters:
    -----------
    d : ConjuntoDatos
        Datos (se estandarizan; para datos ya estandarizados es la identidad)
    lam : float
        Intensidad λ ≥ 0

    Returns:
    --------
    ResultadoAjuste
    """
    if lam < 0:
        raise ValueError(f"❌ λ debe ser no negativo (recibido {lam})")
    z, medias, escalas = standardize(d)
    modelo = Ridge(alpha=lam, solver="cholesky", fit_intercept=True)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        modelo.fit(z.X.values, z.y)
    coef = np.asarray(modelo.coef_, dtype=float)
    coef[np.isclose(np.var(z.X.values, axis=0), 0.0)] = 0.0
    yhat = z.X.values @ coef + float(modelo.intercept_)
    r2_train = r2(yhat, d.y) if np.var(d.y) > 0 else float("nan")
    return ResultadoAjuste(float(lam), medias, escalas, coef, float(modelo.intercept_),
                           r2_train, d.columnas)


def seleccionar_lambda(d: ConjuntoDatos, seed: int = 0,
                       rejilla: Sequence[float] = tuple(REJILLA_LAMBDA)) -> float:
    """λ por validación cruzada de 5 pliegues (R²) sobre la rejilla dada."""
    if len(d) < 10:
        warnings.warn("⚠️ Muy pocas filas para validación cruzada; se usa λ=1e-3")
        return 1e-3
    busqueda = GridSearchCV(
        Pipeline([("scaler", StandardScaler()), ("ridge", Ridge(solver="cholesky"))]),
        {"ridge__alpha": list(rejilla)},
        cv=KFold(n_splits=5, shuffle=True, random_state=seed),
        scoring="r2")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        busqueda.fit(d.X.values.astype(float), d.y)
    return float(busqueda.best_params_["ridge__alpha"])


def pca_screen(d: ConjuntoDatos, cutoff_ratio: float = 1 / 50) -> Tuple[np.ndarray, int]:
    """
    Valores singulares de la matriz estandarizada y número dominante

    Las columnas se estandarizan antes de la descomposición; sobre datos ya
    estandarizados el paso es la identidad.

    Returns:
    --------
    Tuple[np.ndarray, int]
        (valores singulares descendentes, cuántos ≥ cutoff_ratio × máximo)
    """
    if d.X.size == 0:
        raise ValueError("❌ Matriz de características vacía")
    X = np.asarray(standardize(d)[0].X.values, dtype=float)
    if X.shape[0] < X.shape[1]:
        warnings.warn(f"⚠️ PCA con {X.shape[0]} filas y {X.shape[1]} columnas: "
                      "el espectro queda truncado")
    pca = PCA(n_components=min(X.shape)).fit(X)
    valores = np.clip(np.sort(pca.singular_values_)[::-1], 0.0, None)
    if valores[0] == 0:
        return valores, 0
    return valores, int(np.sum(valores >= cutoff_ratio * valores[0]))


def split(d: ConjuntoDatos, ratio: float = 0.8, seed: int = 0) -> Tuple[ConjuntoDatos, ConjuntoDatos]:
    """División sembrada ⌊ratio·N⌋ / resto."""
    if len(d) < 5:
        raise ValueError(f"❌ Se requieren al menos 5 filas para dividir (hay {len(d)})")
    n_train = int(math.floor(ratio * len(d) + 1e-9))
    entrenamiento, prueba = train_test_split(np.arange(len(d)), train_size=n_train,
                                             random_state=seed, shuffle=True)
    return d.filas(sorted(entrenamiento)), d.filas(sorted(prueba))


def holdout_family(d: ConjuntoDatos, familia: str) -> Tuple[ConjuntoDatos, ConjuntoDatos]:
    """Entrenar con todas las familias salvo una; probar con esa familia."""
    if d.meta.empty or "family" not in d.meta:
        raise ValueError("❌ El conjunto no tiene metadatos de familia")
    mascara = (d.meta["family"] == familia).values
    if not mascara.any():
        raise ValueError(f"❌ Familia ausente del conjunto: {familia}")
    return d.filas(np.flatnonzero(~mascara)), d.filas(np.flatnonzero(mascara))


def transfer_evaluate(ajuste: ResultadoAjuste, otro: ConjuntoDatos) -> float:
    """R² del modelo ajustado aplicado sin cambios a otro conjunto con el mismo esquema."""
    if otro.columnas != ajuste.columnas:
        raise ValueError(f"❌ Esquema incompatible: {len(otro.columnas)} columnas frente a "
                         f"{len(ajuste.columnas)} esperadas")
    return r2(ajuste.predecir(otro.X), otro.y)


# ============================================================
# Evaluaciones compuestas
# ============================================================

def evaluar_divisiones(d: ConjuntoDatos, lam: float, n_divisiones: int = 50,
                       seed: int = 0) -> Dict[str, float]:
    """R² de prueba sobre divisiones 80/20 con semillas seed, seed+1, …"""
    valores = []
    for i in range(n_divisiones):
        entrenamiento, prueba = split(d, 0.8, seed + i)
        if np.var(prueba.y) == 0 or np.var(entrenamiento.y) == 0:
            continue
        valores.append(transfer_evaluate(ridge_fit(entrenamiento, lam), prueba))
    if not valores:
        raise ValueError("❌ Ninguna división tiene fidelidades con varianza")
    return {"mean": float(np.mean(valores)), "sd": float(np.std(valores)),
            "count": len(valores)}


def evaluar_exclusiones(d: ConjuntoDatos, lam: float) -> Dict[str, float]:
    """R² por familia excluida del entrenamiento."""
    resultado = {}
    for familia in sorted(d.meta["family"].unique()):
        entrenamiento, prueba = holdout_family(d, familia)
        if len(entrenamiento) < 2 or len(prueba) < 2 or np.var(prueba.y) == 0:
            continue
        resultado[familia] = transfer_evaluate(ridge_fit(entrenamiento, lam), prueba)
    return resultado


def correlaciones(d: ConjuntoDatos) -> pd.DataFrame:
    """Correlación de Pearson (r, p) de cada característica con la fidelidad."""
    filas = []
    for columna in d.columnas:
        x = d.X[columna].values.astype(float)
        if np.var(x) == 0 or np.var(d.y) == 0:
            filas.append({"feature": columna, "pearson_r": float("nan"), "p_value": float("nan")})
            continue
        r, p = stats.pearsonr(x, d.y)
        filas.append({"feature": columna, "pearson_r": float(r), "p_value": float(p)})
    return pd.DataFrame(filas)


def evaluar_configuraciones(d: ConjuntoDatos, seed: int = 0,
                            n_divisiones: int = 50) -> Dict[str, Dict[str, float]]:
    """Ajuste completo y R² de divisiones para cada conjunto de columnas disponible."""
    resultado = {}
    for nombre, columnas in CONFIGURACIONES.items():
        if any(c not in d.columnas for c in columnas):
            continue
        sub = d.seleccionar(columnas)
        lam = seleccionar_lambda(sub, seed)
        ajuste = ridge_fit(sub, lam)
        resultado[nombre] = {"lambda": lam, "full_r2": ajuste.r2_entrenamiento,
                             **{f"split_r2_{k}": v for k, v in
                                evaluar_divisiones(sub, lam, n_divisiones, seed).items()}}
    return resultado


def conjunto_desde_tablas(caracteristicas: pd.DataFrame, puntajes: pd.DataFrame,
                          columnas: Optional[Sequence[str]] = None,
                          backend: str = "") -> ConjuntoDatos:
    """
    Unir features.csv y scores.csv por (benchmark, family, n, seed)

    Las columnas extra (p. ej. g2q) se conservan si se piden.
    """
    columnas = list(columnas) if columnas is not None else COLUMNAS_TODAS
    faltan = [c for c in columnas if c not in caracteristicas.columns]
    if faltan:
        raise ValueError(f"❌ features.csv no tiene las columnas {faltan}")
    unido = caracteristicas.merge(puntajes[CLAVES_FILA + ["score"]], on=CLAVES_FILA,
                                  how="inner", validate="one_to_one")
    if unido.empty:
        raise ValueError("❌ features.csv y scores.csv no comparten filas")
    unido = unido.sort_values(CLAVES_FILA).reset_index(drop=True)
    meta = unido[CLAVES_FILA].copy()
    meta["backend"] = backend
    return ConjuntoDatos(unido[columnas].astype(float).reset_index(drop=True),
                         unido["score"].values, meta)
