"""
Tests del Modelo Estadístico
============================

Estandarización, ridge, R², barrido PCA, divisiones 80/20, exclusión
por familia y transferencia entre conjuntos.

Para ejecutar las pruebas:
pytest test_modelo_estadistico.py -v
"""

import numpy as np
import pandas as pd
import pytest

from modelo_estadistico import (
    COLUMNAS_TODAS, REJILLA_LAMBDA, ConjuntoDatos, ResultadoAjuste, conjunto_desde_tablas,
    correlaciones, evaluar_configuraciones, evaluar_divisiones, evaluar_exclusiones,
    holdout_family, pca_screen, r2, ridge_fit, seleccionar_lambda, split, standardize,
    transfer_evaluate,
)


@pytest.fixture
def lineal():
    """y = Xβ* + ε con ε ~ N(0, 0.02²), 80 filas y 5 columnas."""
    rng = np.random.default_rng(42)
    X = rng.normal(size=(80, 5))
    beta = np.array([0.5, -0.3, 0.0, 0.8, 0.1])
    y = X @ beta + rng.normal(scale=0.02, size=80)
    familias = np.array(["GHZ", "TFIM", "QFT_M", "IPE"])[np.arange(80) % 4]
    meta = pd.DataFrame({"family": familias, "n": np.arange(80), "seed": 0})
    return ConjuntoDatos(pd.DataFrame(X, columns=[f"x{i}" for i in range(5)]), y, meta), beta


class TestConjuntoDatos:
    """Validación del contenedor"""

    def test_filas_inconsistentes(self):
        with pytest.raises(ValueError, match="inconsistentes"):
            ConjuntoDatos(pd.DataFrame({"a": [1.0, 2.0]}), np.array([1.0]))

    def test_faltantes(self):
        with pytest.raises(ValueError, match="faltantes"):
            ConjuntoDatos(pd.DataFrame({"a": [1.0, np.nan]}), np.array([1.0, 2.0]))

    def test_seleccionar(self, lineal):
        d, _ = lineal
        assert d.seleccionar(["x1", "x0"]).columnas == ["x1", "x0"]
        with pytest.raises(ValueError):
            d.seleccionar(["z"])


class TestBasicas:
    """Estandarización, R² y ridge"""

    def test_standardize(self, lineal):
        d, _ = lineal
        z, medias, escalas = standardize(d)
        assert np.allclose(z.X.mean(axis=0), 0.0, atol=1e-12)
        assert np.allclose(z.X.values.std(axis=0), 1.0)
        assert medias.shape == escalas.shape == (5,)

    def test_columna_constante(self):
        d = ConjuntoDatos(pd.DataFrame({"a": [3.0, 3.0, 3.0], "b": [1.0, 2.0, 3.0]}),
                          np.array([0.1, 0.2, 0.3]))
        z, _, escalas = standardize(d)
        assert np.all(z.X["a"] == 0.0)
        assert escalas[0] == 1.0

    def test_r2(self):
        y = np.array([1.0, 2.0, 3.0])
        assert r2(y, y) == 1.0
        assert r2(np.full(3, 2.0), y) == pytest.approx(0.0)
        with pytest.raises(ValueError):
            r2([1.0, 1.0], [2.0, 2.0])

    def test_y_igual_2x(self):
        x = np.linspace(0, 1, 20)
        d = ConjuntoDatos(pd.DataFrame({"x": x}), 2 * x)
        ajuste = ridge_fit(d, 0.0)
        assert ajuste.coef_original[0] == pytest.approx(2.0)
        assert ajuste.r2_entrenamiento == pytest.approx(1.0)

    def test_lambda_grande(self, lineal):
        d, _ = lineal
        ajuste = ridge_fit(d, 1e12)
        assert np.allclose(ajuste.coef, 0.0, atol=1e-6)
        assert np.allclose(ajuste.predecir(d.X), d.y.mean(), atol=1e-6)

    def test_lambda_negativo(self, lineal):
        with pytest.raises(ValueError):
            ridge_fit(lineal[0], -1.0)

    def test_recupera_coeficientes(self, lineal):
        d, beta = lineal
        ajuste = ridge_fit(d, 1e-3)
        assert ajuste.r2_entrenamiento >= 0.95
        assert np.max(np.abs(ajuste.coef_original - beta)) <= 0.1

    def test_prediccion_recortada(self, lineal):
        d, _ = lineal
        yhat = ridge_fit(d, 1e-3).predecir(d.X, recortar=True)
        assert yhat.min() >= 0.0 and yhat.max() <= 1.0

    def test_modelo_dict(self, lineal):
        ajuste = ridge_fit(lineal[0], 0.01)
        datos = ajuste.a_dict()
        assert datos["schema"] == "table2-v1"
        copia = ResultadoAjuste.desde_dict(datos)
        assert np.allclose(copia.predecir(lineal[0].X), ajuste.predecir(lineal[0].X))
        with pytest.raises(ValueError, match="Esquema"):
            ResultadoAjuste.desde_dict({**datos, "schema": "otro"})


class TestSeleccionLambda:
    """Validación cruzada de λ"""

    def test_en_rejilla(self, lineal):
        assert seleccionar_lambda(lineal[0], seed=0) in REJILLA_LAMBDA

    def test_pocas_filas(self, lineal):
        with pytest.warns(UserWarning, match="pocas filas"):
            assert seleccionar_lambda(lineal[0].filas(range(6))) == 1e-3


class TestPCA:
    """Barrido de valores singulares"""

    def test_rango_dos(self):
        rng = np.random.default_rng(0)
        a, b = rng.normal(size=40), rng.normal(size=40)
        d = ConjuntoDatos(pd.DataFrame({"a": a, "b": b, "c": a + b}), rng.normal(size=40))
        valores, dominantes = pca_screen(d)
        assert dominantes == 2
        assert list(valores) == sorted(valores, reverse=True)

    def test_pocas_filas(self):
        d = ConjuntoDatos(pd.DataFrame(np.eye(3, 5)), np.arange(3.0))
        with pytest.warns(UserWarning, match="truncado"):
            pca_screen(d)

    def test_escalas_distintas(self):
        rng = np.random.default_rng(4)
        X = pd.DataFrame(rng.normal(size=(200, 3)), columns=["a", "b", "c"])
        X["c"] *= 1000.0
        valores, dominantes = pca_screen(ConjuntoDatos(X, rng.normal(size=200)))
        assert dominantes == 3
        assert valores[-1] / valores[0] > 0.5


class TestDivisiones:
    """80/20, exclusión por familia y transferencia"""

    def test_tamanos(self, lineal):
        d = lineal[0].filas(range(50))
        entrenamiento, prueba = split(d, 0.8, seed=3)
        assert (len(entrenamiento), len(prueba)) == (40, 10)
        assert set(entrenamiento.meta["n"]).isdisjoint(prueba.meta["n"])

    def test_reproducible(self, lineal):
        a, _ = split(lineal[0], seed=7)
        b, _ = split(lineal[0], seed=7)
        assert list(a.meta["n"]) == list(b.meta["n"])

    def test_muy_pocas_filas(self, lineal):
        with pytest.raises(ValueError, match="al menos 5"):
            split(lineal[0].filas(range(4)))

    def test_holdout(self, lineal):
        entrenamiento, prueba = holdout_family(lineal[0], "TFIM")
        assert set(prueba.meta["family"]) == {"TFIM"}
        assert "TFIM" not in set(entrenamiento.meta["family"])
        with pytest.raises(ValueError, match="ausente"):
            holdout_family(lineal[0], "STEANE_CODE")

    def test_transferencia_mismo_conjunto(self, lineal):
        d, _ = lineal
        ajuste = ridge_fit(d, 1e-3)
        assert transfer_evaluate(ajuste, d) == pytest.approx(ajuste.r2_entrenamiento)

    def test_esquema_incompatible(self, lineal):
        d, _ = lineal
        ajuste = ridge_fit(d, 1e-3)
        with pytest.raises(ValueError, match="Esquema incompatible"):
            transfer_evaluate(ajuste, d.seleccionar(["x0", "x1"]))

    def test_evaluar_divisiones(self, lineal):
        resultado = evaluar_divisiones(lineal[0], 1e-3, n_divisiones=50)
        assert resultado["count"] == 50
        assert resultado["mean"] >= 0.95

    def test_evaluar_exclusiones(self, lineal):
        resultado = evaluar_exclusiones(lineal[0], 1e-3)
        assert set(resultado) == {"GHZ", "IPE", "QFT_M", "TFIM"}
        assert all(v >= 0.9 for v in resultado.values())


class TestCorrelacionesYTablas:
    """Pearson y unión de tablas"""

    def test_correlaciones(self):
        x = np.arange(10.0)
        d = ConjuntoDatos(pd.DataFrame({"x": x, "k": np.ones(10)}), 3 * x + 1)
        tabla = correlaciones(d).set_index("feature")
        assert tabla.loc["x", "pearson_r"] == pytest.approx(1.0)
        assert np.isnan(tabla.loc["k", "pearson_r"])

    def _tablas(self, n_filas: int = 60):
        rng = np.random.default_rng(1)
        claves = pd.DataFrame({"benchmark": [f"GHZ_n{i}_s0" for i in range(n_filas)],
                               "family": "GHZ", "n": np.arange(n_filas), "seed": 0})
        X = pd.DataFrame(rng.uniform(size=(n_filas, len(COLUMNAS_TODAS))), columns=COLUMNAS_TODAS)
        caracteristicas = pd.concat([claves, X], axis=1)
        caracteristicas["g2q"] = rng.uniform(size=n_filas)
        puntajes = claves.assign(**{"noise-tag": "ibm-like"},
                                 score=1.0 - 0.5 * X[COLUMNAS_TODAS[0]] + 0.01 * rng.normal(size=n_filas))
        return caracteristicas, puntajes

    def test_conjunto_desde_tablas(self):
        caracteristicas, puntajes = self._tablas()
        d = conjunto_desde_tablas(caracteristicas, puntajes.iloc[::-1], backend="b1")
        assert d.columnas == COLUMNAS_TODAS
        assert len(d) == 60
        assert set(d.meta["backend"]) == {"b1"}
        assert list(d.meta["n"]) == sorted(d.meta["n"])

    def test_columnas_ausentes(self):
        caracteristicas, puntajes = self._tablas()
        with pytest.raises(ValueError, match="no tiene las columnas"):
            conjunto_desde_tablas(caracteristicas.drop(columns=[COLUMNAS_TODAS[3]]), puntajes)

    def test_sin_filas_comunes(self):
        caracteristicas, puntajes = self._tablas()
        with pytest.raises(ValueError, match="no comparten"):
            conjunto_desde_tablas(caracteristicas, puntajes.assign(seed=9))

    def test_configuraciones(self):
        caracteristicas, puntajes = self._tablas()
        d = conjunto_desde_tablas(caracteristicas, puntajes, COLUMNAS_TODAS + ["g2q"])
        resultado = evaluar_configuraciones(d, seed=0, n_divisiones=5)
        assert set(resultado) == {"all", "unnormalized", "sota_unnormalized"}
        assert resultado["all"]["full_r2"] >= 0.9

    def test_todas_superan_sota(self):
        caracteristicas, puntajes = self._tablas(n_filas=80)
        oculta = caracteristicas[COLUMNAS_TODAS[12]]
        puntajes["score"] = puntajes["score"] - 0.4 * oculta
        d = conjunto_desde_tablas(caracteristicas, puntajes, COLUMNAS_TODAS + ["g2q"])
        resultado = evaluar_configuraciones(d, seed=0, n_divisiones=5)
        assert resultado["all"]["full_r2"] > resultado["sota_unnormalized"]["full_r2"]
        assert resultado["all"]["full_r2"] - resultado["sota_unnormalized"]["full_r2"] > 0.1
