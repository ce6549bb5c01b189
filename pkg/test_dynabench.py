"""
Tests de Integración de la Línea de Comandos
============================================

Flujo completo generate → run → featurize → score → fit → report sobre un
manifiesto pequeño, reproducibilidad byte a byte, transferencia entre
ejecuciones, export-qasm y códigos de salida.

Para ejecutar las pruebas:
pytest test_dynabench.py -v
pytest test_dynabench.py -v -m "not integration"
"""

import json

import pandas as pd
import pytest

from caracteristicas_dinamicas import NOMBRES_CARACTERISTICAS
from dynabench import ETAPAS, escribir_atomico, main, nombre_circuito


MANIFIESTO = {
    "suite": {
        "GHZ": [3, 5, 7],
        "IPE": [{"sizes": [2], "params": {"theta": 0.625, "m_bits": 3}}],
        "CNOT_LADDER": [{"sizes": [3, 5], "params": {"dfe_k": 4}}],
        "TFIM": [5],
    },
    "noise": "ruidoso",
    "shots": 128,
    "seed": 1,
    "noise_presets": {"ruidoso": {"p1": 0.001, "p2": 0.05, "pm": 0.02, "pidle": 0.001}},
}

ARTEFACTOS = ["features.csv", "scores.csv", "model.json", "fit.json", "report.json"]


def escribir_manifiesto(directorio, datos=None) -> str:
    ruta = directorio / "manifest.json"
    ruta.write_text(json.dumps(datos or MANIFIESTO), encoding="utf-8")
    return str(ruta)


def flujo_completo(manifiesto: str, salida, *extra) -> None:
    for etapa in ETAPAS[:-1]:
        codigo = main([etapa, "--manifest", manifiesto, "--out", str(salida), "--quiet", *extra])
        assert codigo == 0, etapa


def contenido(directorio) -> dict:
    return {str(p.relative_to(directorio)): p.read_bytes()
            for p in sorted(directorio.rglob("*")) if p.is_file()}


class TestArchivos:
    """Escritura atómica y nombres"""

    def test_nombre_circuito(self):
        assert nombre_circuito("GHZ", 5, 0) == "GHZ_n5_s0"

    def test_escritura_atomica(self, tmp_path):
        ruta = tmp_path / "sub" / "a.txt"
        escribir_atomico(ruta, "hola\n")
        escribir_atomico(ruta, "adiós\n")
        assert ruta.read_text(encoding="utf-8") == "adiós\n"
        assert [p.name for p in ruta.parent.iterdir()] == ["a.txt"]


class TestCodigosSalida:
    """0 éxito, 2 validación, 3 etapa previa ausente"""

    def test_sin_manifiesto(self, tmp_path):
        assert main(["generate"]) == 2
        assert main(["generate", "--manifest", str(tmp_path / "nada.json")]) == 3

    def test_etapa_desconocida(self):
        with pytest.raises(SystemExit):
            main(["deploy"])

    def test_etapa_previa_ausente(self, tmp_path):
        manifiesto = escribir_manifiesto(tmp_path)
        salida = str(tmp_path / "salida")
        for etapa in ("run", "featurize", "score", "report"):
            assert main([etapa, "--manifest", manifiesto, "--out", salida, "--quiet"]) == 3

    def test_fit_sin_puntajes(self, tmp_path):
        manifiesto = escribir_manifiesto(tmp_path)
        salida = str(tmp_path / "salida")
        assert main(["generate", "--manifest", manifiesto, "--out", salida, "--quiet"]) == 0
        assert main(["featurize", "--manifest", manifiesto, "--out", salida, "--quiet"]) == 0
        assert main(["fit", "--manifest", manifiesto, "--out", salida, "--quiet"]) == 3

    def test_preset_desconocido(self, tmp_path):
        manifiesto = escribir_manifiesto(tmp_path)
        assert main(["generate", "--manifest", manifiesto, "--noise", "marte", "--quiet"]) == 2

    def test_manifiesto_invalido(self, tmp_path):
        assert main(["generate", "--manifest",
                     escribir_manifiesto(tmp_path, {"suite": {"TOFFOLI": [3]}})]) == 2

    def test_entrada_repetida(self, tmp_path):
        manifiesto = escribir_manifiesto(tmp_path, {"suite": {"GHZ": [3, 3]}})
        assert main(["generate", "--manifest", manifiesto, "--out", str(tmp_path / "s"),
                     "--quiet"]) == 2

    def test_demasiados_qubits(self, tmp_path):
        manifiesto = escribir_manifiesto(tmp_path, {"suite": {"GHZ": [27]}, "shots": 8})
        salida = str(tmp_path / "s")
        assert main(["generate", "--manifest", manifiesto, "--out", salida, "--quiet"]) == 0
        assert main(["run", "--manifest", manifiesto, "--out", salida, "--quiet"]) == 2

    def test_tamano_invalido(self, tmp_path):
        manifiesto = escribir_manifiesto(tmp_path, {"suite": {"GHZ": [4]}})
        assert main(["generate", "--manifest", manifiesto, "--out", str(tmp_path / "s"),
                     "--quiet"]) == 2


class TestExportQasm:
    """export-qasm desde un archivo de circuitos o desde un manifiesto"""

    @pytest.fixture
    def circuitos(self, tmp_path):
        manifiesto = escribir_manifiesto(tmp_path, {"suite": {"QFT_M": [3]}, "seed": 2})
        salida = tmp_path / "s"
        assert main(["generate", "--manifest", manifiesto, "--out", str(salida), "--quiet"]) == 0
        return salida / "circuits" / "QFT_M_n3_s2.json"

    def test_a_archivo(self, circuitos, tmp_path):
        destino = tmp_path / "qft.qasm"
        assert main(["export-qasm", "--circuit", str(circuitos), "--variant", "2",
                     "--output", str(destino)]) == 0
        texto = destino.read_text(encoding="utf-8")
        assert texto.startswith("OPENQASM 3.0;\n")
        assert "if (" in texto

    def test_a_salida_estandar(self, circuitos, capsys):
        assert main(["export-qasm", "--circuit", str(circuitos)]) == 0
        assert "qubit[3] q;" in capsys.readouterr().out

    def test_errores(self, circuitos, tmp_path):
        assert main(["export-qasm"]) == 2
        assert main(["export-qasm", "--circuit", str(circuitos), "--variant", "3"]) == 2
        assert main(["export-qasm", "--circuit", str(tmp_path / "nada.json")]) == 3

    def test_suite_desde_manifiesto(self, tmp_path):
        manifiesto = escribir_manifiesto(tmp_path, {"suite": {"QFT_M": [3], "GHZ": [5]}, "seed": 2})
        salida = tmp_path / "s"
        assert main(["export-qasm", "--manifest", manifiesto, "--out", str(salida), "--quiet"]) == 3
        assert main(["generate", "--manifest", manifiesto, "--out", str(salida), "--quiet"]) == 0
        assert main(["export-qasm", "--manifest", manifiesto, "--out", str(salida), "--quiet"]) == 0
        archivos = sorted(p.name for p in (salida / "qasm").glob("*.qasm"))
        assert archivos == ["GHZ_n5_s2.qasm", "QFT_M_n3_s2_v0.qasm", "QFT_M_n3_s2_v1.qasm",
                            "QFT_M_n3_s2_v2.qasm"]
        assert "if (" in (salida / "qasm" / "GHZ_n5_s2.qasm").read_text(encoding="utf-8")


@pytest.mark.integration
@pytest.mark.slow
class TestFlujoCompleto:
    """Pipeline completo sobre una suite pequeña"""

    @pytest.fixture(scope="class")
    def ejecucion(self, tmp_path_factory):
        base = tmp_path_factory.mktemp("flujo")
        manifiesto = escribir_manifiesto(base)
        flujo_completo(manifiesto, base / "a")
        return base, manifiesto

    def test_artefactos(self, ejecucion):
        base, _ = ejecucion
        for nombre in ARTEFACTOS:
            assert (base / "a" / nombre).exists(), nombre
        assert len(list((base / "a" / "circuits").glob("*.json"))) == 7
        assert len(list((base / "a" / "counts").glob("*.json"))) == 7

    def test_features(self, ejecucion):
        base, _ = ejecucion
        tabla = pd.read_csv(base / "a" / "features.csv")
        assert list(tabla.columns) == (["benchmark", "family", "n", "n_s", "seed"]
                                       + list(NOMBRES_CARACTERISTICAS) + ["g2q"])
        normalizadas = tabla[NOMBRES_CARACTERISTICAS[7:]]
        assert ((normalizadas >= 0) & (normalizadas <= 1 + 1e-12)).all().all()
        ghz = tabla[tabla["family"] == "GHZ"].sort_values("n")
        assert list(ghz["n_s"]) == [2, 3, 4]
        assert list(ghz["f06_n_total"]) == [3, 5, 7]

    def test_scores(self, ejecucion):
        base, _ = ejecucion
        tabla = pd.read_csv(base / "a" / "scores.csv")
        assert list(tabla.columns) == ["benchmark", "family", "n", "seed", "noise-tag", "score"]
        assert tabla["score"].between(0, 1).all()
        assert set(tabla["noise-tag"]) == {"ruidoso"}
        ghz = tabla[tabla["family"] == "GHZ"].sort_values("n")["score"].values
        assert ghz[0] > ghz[-1]

    def test_fit_y_reporte(self, ejecucion):
        base, _ = ejecucion
        modelo = json.loads((base / "a" / "model.json").read_text(encoding="utf-8"))
        assert modelo["schema"] == "table2-v1"
        assert len(modelo["coef"]) == 24
        ajuste = json.loads((base / "a" / "fit.json").read_text(encoding="utf-8"))
        assert ajuste["rows"] == 7
        reporte = json.loads((base / "a" / "report.json").read_text(encoding="utf-8"))
        assert set(reporte) >= {"noise", "r2", "correlations", "pca", "renyi2", "series"}
        assert reporte["renyi2"]["TFIM_n5_s1"] is not None
        assert len(reporte["series"]["predicted_vs_actual"]) == 7
        assert reporte["pca"]["dominant"] >= 1

    def test_reproducible(self, ejecucion):
        base, manifiesto = ejecucion
        flujo_completo(manifiesto, base / "b")
        assert contenido(base / "a") == contenido(base / "b")

    def test_transferencia(self, ejecucion):
        base, manifiesto = ejecucion
        otro = base / "ideal"
        flujo_completo(manifiesto, otro, "--noise", "ibm-like")
        assert main(["report", "--manifest", manifiesto, "--out", str(base / "a"),
                     "--compare", str(otro), "--quiet"]) == 0
        reporte = json.loads((base / "a" / "report.json").read_text(encoding="utf-8"))
        assert set(reporte["transfer"]) == {"compare_dir", "this_to_other", "other_to_this"}
