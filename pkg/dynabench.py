#!/usr/bin/env python3
"""
Línea de Comandos de dynabench
==============================

Orquestación del flujo completo con artefactos reproducibles en disco:
- generate: circuitos JSON con su modelo de ramas y referencia ideal
- run: conteos por circuito con el preset de ruido del manifiesto
- featurize: features.csv con las 24 características (+ g2q)
- score: scores.csv con el puntaje de cada familia
- fit: model.json (ridge) y fit.json (R² por divisiones y exclusiones)
- report: report.json con R², transferencia, correlaciones, PCA y series
- export-qasm: texto OpenQASM 3 de un circuito generado (--circuit) o de toda
  la suite (--manifest, en qasm/)

Códigos de salida: 0 éxito, 2 error de validación, 3 etapa previa ausente.

Autor: Proyecto Probabilidades
Fecha: 18 de octubre de 2026
"""

import argparse
import json
import math
import os
import sys
import tempfile
import warnings
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from caracteristicas_dinamicas import (
    NOMBRES_CARACTERISTICAS, expected_two_qubit_gates, feature_vector, renyi2_normalized,
)
from configuracion import ManifiestoEjecucion, advertir_rango, cargar_manifiesto
from exportador_qasm import exportar_qasm
from generadores_benchmarks import FAMILIAS_CLIFFORD, BenchmarkGenerado, generar
from modelo_estadistico import (
    COLUMNAS_TODAS, ResultadoAjuste, conjunto_desde_tablas, correlaciones, evaluar_configuraciones,
    evaluar_divisiones, evaluar_exclusiones, pca_screen, ridge_fit, seleccionar_lambda,
    transfer_evaluate,
)
from puntajes_fidelidad import (
    ConfiguracionDFE, dfe_desde_conteos, muestras_dfe, puntuar_conteos, qft_score_desde_conteos,
    semilla_muestra,
)
from simulador_dinamico import DistribucionConteos, run


ETAPAS = ("generate", "run", "featurize", "score", "fit", "report", "export-qasm")
COLUMNAS_META = ["benchmark", "family", "n", "seed"]


# ============================================================
# Archivos
# ============================================================

def nombre_circuito(familia: str, n_total: int, seed: int) -> str:
    return f"{familia}_n{n_total}_s{seed}"


def escribir_atomico(ruta: Path, texto: str):
    """Escribir en un temporal del mismo directorio y renombrar."""
    ruta.parent.mkdir(parents=True, exist_ok=True)
    descriptor, temporal = tempfile.mkstemp(dir=ruta.parent, prefix=f".{ruta.name}.", suffix=".tmp")
    try:
        with os.fdopen(descriptor, "w", encoding="utf-8", newline="\n") as f:
            f.write(texto)
        os.replace(temporal, ruta)
    except BaseException:
        if os.path.exists(temporal):
            os.unlink(temporal)
        raise


def _sin_nan(valor: Any) -> Any:
    if isinstance(valor, dict):
        return {str(k): _sin_nan(v) for k, v in valor.items()}
    if isinstance(valor, (list, tuple)):
        return [_sin_nan(v) for v in valor]
    if isinstance(valor, (np.floating, float)):
        return None if math.isnan(float(valor)) else float(valor)
    if isinstance(valor, np.integer):
        return int(valor)
    return valor


def escribir_json(ruta: Path, datos: Any):
    escribir_atomico(ruta, json.dumps(_sin_nan(datos), sort_keys=True, indent=2,
                                      ensure_ascii=False) + "\n")


def escribir_csv(ruta: Path, tabla: pd.DataFrame):
    escribir_atomico(ruta, tabla.to_csv(index=False, float_format="%.12g", lineterminator="\n"))


def leer_json(ruta: Path, etapa: str) -> Any:
    if not ruta.exists():
        raise FileNotFoundError(f"❌ Falta {ruta}: ejecute antes la etapa '{etapa}'")
    try:
        return json.loads(ruta.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ValueError(f"❌ JSON inválido en {ruta}: {e}") from e


def leer_csv(ruta: Path, etapa: str) -> pd.DataFrame:
    if not ruta.exists():
        raise FileNotFoundError(f"❌ Falta {ruta}: ejecute antes la etapa '{etapa}'")
    return pd.read_csv(ruta, dtype={"benchmark": str, "family": str})


def _entradas(manifiesto: ManifiestoEjecucion) -> List[Tuple[str, str, int, Dict[str, Any]]]:
    """(nombre, familia, n_total, parámetros) sin nombres repetidos."""
    vistos = set()
    entradas = []
    for familia, n, params in manifiesto.entradas():
        nombre = nombre_circuito(familia, n, manifiesto.seed)
        if nombre in vistos:
            raise ValueError(f"❌ Entrada repetida en la suite: {familia} con {n} qubits")
        vistos.add(nombre)
        entradas.append((nombre, familia, n, params))
    return entradas


def cargar_benchmarks(directorio: Path, nombre: str) -> List[BenchmarkGenerado]:
    datos = leer_json(directorio / "circuits" / f"{nombre}.json", "generate")
    return [BenchmarkGenerado.desde_dict(v) for v in datos["variants"]]


def _configuracion_dfe(manifiesto: ManifiestoEjecucion, params: Dict[str, Any]) -> ConfiguracionDFE:
    return ConfiguracionDFE(k=int(params.get("dfe_k", 30)), shots=manifiesto.shots)


def _encabezado(titulo: str, mostrar_info: bool):
    if mostrar_info:
        print("=" * 50)
        print(f"🚀 {titulo}")
        print("=" * 50)


# ============================================================
# Etapas
# ============================================================

def cmd_generate(manifiesto: ManifiestoEjecucion, mostrar_info: bool = True) -> List[Path]:
    """
    Generar los circuitos de la suite

    Returns:
    --------
    list de Path
        Un archivo circuits/<familia>_n<k>_s<seed>.json por entrada
    """
    _encabezado("GENERACIÓN DE CIRCUITOS", mostrar_info)
    rutas = []
    for nombre, familia, n, params in _entradas(manifiesto):
        advertir_rango(familia, n)
        variantes = generar(familia, n, params, seed=manifiesto.seed)
        ruta = manifiesto.directorio / "circuits" / f"{nombre}.json"
        escribir_json(ruta, {"family": familia, "n_total": n, "seed": manifiesto.seed,
                             "params": params, "variants": [b.a_dict() for b in variantes]})
        rutas.append(ruta)
        if mostrar_info:
            print(f"✅ {nombre}: {len(variantes)} variante(s)")
    return rutas


def cmd_run(manifiesto: ManifiestoEjecucion, mostrar_info: bool = True) -> List[Path]:
    """
    Simular cada circuito generado

    Las familias Clifford guardan los conteos de cada muestra DFE; el resto
    guarda los conteos del propio circuito.
    """
    _encabezado(f"SIMULACIÓN (ruido={manifiesto.noise}, shots={manifiesto.shots})", mostrar_info)
    nm = manifiesto.modelo_ruido
    rutas = []
    for nombre, familia, _, params in _entradas(manifiesto):
        variantes = []
        for bench in cargar_benchmarks(manifiesto.directorio, nombre):
            if familia in FAMILIAS_CLIFFORD:
                cfg = _configuracion_dfe(manifiesto, params)
                muestras = muestras_dfe(bench, cfg.k, manifiesto.seed)
                conteos = [None if m.circuito is None else
                           run(m.circuito, cfg.shots, nm, seed=semilla_muestra(manifiesto.seed, i),
                               workers=manifiesto.workers).a_dict()
                           for i, m in enumerate(muestras)]
                variantes.append({"dfe_samples": conteos})
            else:
                conteos = run(bench.circuito, manifiesto.shots, nm, seed=manifiesto.seed,
                              workers=manifiesto.workers)
                variantes.append({"counts": conteos.a_dict()})
        ruta = manifiesto.directorio / "counts" / f"{nombre}.json"
        escribir_json(ruta, {"family": familia, "noise": manifiesto.noise,
                             "shots": manifiesto.shots, "seed": manifiesto.seed,
                             "variants": variantes})
        rutas.append(ruta)
        if mostrar_info:
            print(f"✅ {nombre}: conteos guardados")
    return rutas


def cmd_featurize(manifiesto: ManifiestoEjecucion, mostrar_info: bool = True) -> pd.DataFrame:
    """features.csv: metadatos, 24 características y g2q (promedio sobre variantes)."""
    _encabezado("CARACTERÍSTICAS", mostrar_info)
    filas = []
    for nombre, familia, n, _ in _entradas(manifiesto):
        benches = cargar_benchmarks(manifiesto.directorio, nombre)
        vectores = np.array([feature_vector(b.circuito, b.modelo_ramas).como_array()
                             for b in benches])
        g2q = float(np.mean([expected_two_qubit_gates(b.circuito, b.modelo_ramas)
                             for b in benches]))
        fila = {"benchmark": nombre, "family": familia, "n": n,
                "n_s": len(benches[0].circuito.system_qubits), "seed": manifiesto.seed}
        fila.update(zip(NOMBRES_CARACTERISTICAS, vectores.mean(axis=0).tolist()))
        fila["g2q"] = g2q
        filas.append(fila)
    tabla = pd.DataFrame(filas, columns=["benchmark", "family", "n", "n_s", "seed"]
                         + list(NOMBRES_CARACTERISTICAS) + ["g2q"])
    escribir_csv(manifiesto.directorio / "features.csv", tabla)
    if mostrar_info:
        print(f"✅ features.csv: {len(tabla)} filas")
    return tabla


def _puntuar_entrada(manifiesto: ManifiestoEjecucion, familia: str, params: Dict[str, Any],
                     benches: Sequence[BenchmarkGenerado], datos: dict) -> float:
    variantes = datos["variants"]
    if len(variantes) != len(benches):
        raise ValueError(f"❌ Los conteos de {familia} no corresponden a sus circuitos")
    if familia in FAMILIAS_CLIFFORD:
        cfg = _configuracion_dfe(manifiesto, params)
        puntajes = []
        for bench, v in zip(benches, variantes):
            muestras = muestras_dfe(bench, cfg.k, manifiesto.seed)
            conteos = [None if c is None else DistribucionConteos.desde_dict(c)
                       for c in v["dfe_samples"]]
            if len(conteos) != len(muestras):
                raise ValueError(f"❌ {familia}: {len(conteos)} muestras DFE guardadas, "
                                 f"se esperaban {len(muestras)}")
            puntajes.append(dfe_desde_conteos(bench, muestras, conteos).score)
        return float(np.mean(puntajes))
    conteos = [DistribucionConteos.desde_dict(v["counts"]) for v in variantes]
    if familia in ("QFT_M", "PARTIAL_QFT_M"):
        pares = [(b.referencia["s"], c) for b, c in zip(benches, conteos)]
        return qft_score_desde_conteos(pares, familia).score
    return float(np.mean([puntuar_conteos(b, c).score for b, c in zip(benches, conteos)]))


def cmd_score(manifiesto: ManifiestoEjecucion, mostrar_info: bool = True) -> pd.DataFrame:
    """scores.csv: puntaje de cada entrada con el puntaje de su familia."""
    _encabezado("PUNTAJES", mostrar_info)
    filas = []
    for nombre, familia, n, params in _entradas(manifiesto):
        benches = cargar_benchmarks(manifiesto.directorio, nombre)
        datos = leer_json(manifiesto.directorio / "counts" / f"{nombre}.json", "run")
        score = _puntuar_entrada(manifiesto, familia, params, benches, datos)
        filas.append({"benchmark": nombre, "family": familia, "n": n, "seed": manifiesto.seed,
                      "noise-tag": datos.get("noise", manifiesto.noise), "score": score})
        if mostrar_info:
            print(f"✅ {nombre}: {score:.4f}")
    tabla = pd.DataFrame(filas, columns=COLUMNAS_META + ["noise-tag", "score"])
    escribir_csv(manifiesto.directorio / "scores.csv", tabla)
    return tabla


def _conjunto(directorio: Path, columnas: Sequence[str], backend: str):
    caracteristicas = leer_csv(directorio / "features.csv", "featurize")
    puntajes = leer_csv(directorio / "scores.csv", "score")
    return conjunto_desde_tablas(caracteristicas, puntajes, columnas, backend)


def cmd_fit(manifiesto: ManifiestoEjecucion, mostrar_info: bool = True) -> Dict[str, Any]:
    """
    Ajustar el modelo ridge con las 24 características

    λ se elige una vez por validación cruzada sobre todos los datos y se
    reutiliza en las 50 divisiones 80/20.
    """
    _encabezado("AJUSTE DEL MODELO", mostrar_info)
    d = _conjunto(manifiesto.directorio, COLUMNAS_TODAS, manifiesto.noise)
    lam = seleccionar_lambda(d, manifiesto.seed)
    ajuste = ridge_fit(d, lam)
    escribir_json(manifiesto.directorio / "model.json", ajuste.a_dict())

    resumen: Dict[str, Any] = {"lambda": lam, "full_r2": ajuste.r2_entrenamiento,
                               "rows": len(d), "noise": manifiesto.noise}
    if len(d) >= 5 and np.var(d.y) > 0:
        resumen["split_r2"] = evaluar_divisiones(d, lam, 50, manifiesto.seed)
        resumen["holdout_family_r2"] = evaluar_exclusiones(d, lam)
        extendido = _conjunto(manifiesto.directorio, COLUMNAS_TODAS + ["g2q"], manifiesto.noise)
        resumen["settings"] = evaluar_configuraciones(extendido, manifiesto.seed)
    else:
        warnings.warn(f"⚠️ {len(d)} filas sin varianza suficiente: se omiten las divisiones")
        resumen["split_r2"] = None
        resumen["holdout_family_r2"] = {}
        resumen["settings"] = {}
    escribir_json(manifiesto.directorio / "fit.json", resumen)
    if mostrar_info:
        print(f"📊 λ={lam:g}  R² completo={ajuste.r2_entrenamiento:.4f}")
        if resumen["split_r2"]:
            print(f"📊 R² divisiones: {resumen['split_r2']['mean']:.4f} "
                  f"± {resumen['split_r2']['sd']:.4f}")
    return resumen


def _renyi_por_benchmark(manifiesto: ManifiestoEjecucion) -> Dict[str, Optional[float]]:
    """Rényi-2 normalizada de los bits de condición de cada entrada."""
    resultado: Dict[str, Optional[float]] = {}
    for nombre, familia, _, _ in _entradas(manifiesto):
        benches = cargar_benchmarks(manifiesto.directorio, nombre)
        datos = leer_json(manifiesto.directorio / "counts" / f"{nombre}.json", "run")
        valores = []
        for bench, v in zip(benches, datos["variants"]):
            bits = bench.circuito.bits_condicion
            if not bits:
                continue
            registros = v["dfe_samples"] if familia in FAMILIAS_CLIFFORD else [v["counts"]]
            marginal: Dict[str, int] = {}
            for r in registros:
                if r is None:
                    continue
                for cadena, n in DistribucionConteos.desde_dict(r).marginal(bits).items():
                    marginal[cadena] = marginal.get(cadena, 0) + n
            if marginal:
                valores.append(renyi2_normalized(marginal, len(bits)))
        resultado[nombre] = float(np.mean(valores)) if valores else None
    return resultado


def cmd_report(manifiesto: ManifiestoEjecucion, comparar: Optional[str] = None,
               mostrar_info: bool = True) -> Dict[str, Any]:
    """
    report.json con regímenes de R², correlaciones, PCA y series para gráficas

    Parameters:
    -----------
    manifiesto : ManifiestoEjecucion
    comparar : str, opcional
        Directorio de otra ejecución completa para la transferencia de R²
    """
    _encabezado("REPORTE", mostrar_info)
    directorio = manifiesto.directorio
    ajuste = ResultadoAjuste.desde_dict(leer_json(directorio / "model.json", "fit"))
    resumen = leer_json(directorio / "fit.json", "fit")
    d = _conjunto(directorio, ajuste.columnas, manifiesto.noise)
    valores, dominantes = pca_screen(d)

    predichos = ajuste.predecir(d.X, recortar=True)
    serie_fidelidad: Dict[str, List[List[float]]] = {}
    for (familia, n), y in zip(d.meta[["family", "n"]].itertuples(index=False), d.y):
        serie_fidelidad.setdefault(familia, []).append([int(n), float(y)])

    reporte: Dict[str, Any] = {
        "noise": manifiesto.noise,
        "r2": {"full": resumen["full_r2"], "split": resumen["split_r2"],
               "holdout_family": resumen["holdout_family_r2"], "settings": resumen["settings"]},
        "correlations": correlaciones(d).to_dict("records"),
        "pca": {"singular_values": valores.tolist(), "dominant": dominantes},
        "renyi2": _renyi_por_benchmark(manifiesto),
        "series": {
            "fidelity_vs_qubits": {f: sorted(v) for f, v in sorted(serie_fidelidad.items())},
            "singular_values": valores.tolist(),
            "predicted_vs_actual": [
                {"benchmark": b, "predicted": float(p), "actual": float(y)}
                for b, p, y in zip(d.meta["benchmark"], predichos, d.y)],
        },
    }
    if comparar:
        otro_dir = Path(comparar)
        otro_ajuste = ResultadoAjuste.desde_dict(leer_json(otro_dir / "model.json", "fit"))
        otro = _conjunto(otro_dir, otro_ajuste.columnas, otro_dir.name)
        reporte["transfer"] = {"compare_dir": str(otro_dir),
                               "this_to_other": transfer_evaluate(ajuste, otro),
                               "other_to_this": transfer_evaluate(otro_ajuste, d)}
    escribir_json(directorio / "report.json", reporte)
    if mostrar_info:
        print(f"📊 Valores singulares dominantes: {dominantes}")
        if "transfer" in reporte:
            print(f"📊 Transferencia R²: {reporte['transfer']['this_to_other']:.4f} / "
                  f"{reporte['transfer']['other_to_this']:.4f}")
        print(f"✅ Reporte guardado en {directorio / 'report.json'}")
    return reporte


def cmd_export_qasm(ruta_circuito: str, variante: int = 0, salida: Optional[str] = None) -> str:
    """Exportar una variante de un archivo de circuitos a OpenQASM 3."""
    datos = leer_json(Path(ruta_circuito), "generate")
    variantes = datos.get("variants", [datos])
    if not 0 <= variante < len(variantes):
        raise ValueError(f"❌ Variante {variante} fuera de rango (hay {len(variantes)})")
    texto = exportar_qasm(BenchmarkGenerado.desde_dict(variantes[variante]).circuito)
    if salida:
        escribir_atomico(Path(salida), texto)
    else:
        sys.stdout.write(texto)
    return texto


def cmd_export_qasm_suite(manifiesto: ManifiestoEjecucion, mostrar_info: bool = True) -> List[Path]:
    """qasm/<nombre>.qasm por entrada del manifiesto; _v<i> si hay varias variantes."""
    _encabezado("EXPORTACIÓN QASM", mostrar_info)
    rutas = []
    for nombre, _, _, _ in _entradas(manifiesto):
        benches = cargar_benchmarks(manifiesto.directorio, nombre)
        for i, bench in enumerate(benches):
            sufijo = f"_v{i}" if len(benches) > 1 else ""
            ruta = manifiesto.directorio / "qasm" / f"{nombre}{sufijo}.qasm"
            escribir_atomico(ruta, exportar_qasm(bench.circuito))
            rutas.append(ruta)
    if mostrar_info:
        print(f"✅ {len(rutas)} archivos QASM en {manifiesto.directorio / 'qasm'}")
    return rutas


# ============================================================
# Punto de entrada
# ============================================================

def crear_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dynabench",
        description="Benchmarks de circuitos dinámicos: generación, simulación y modelado")
    parser.add_argument("etapa", choices=ETAPAS)
    parser.add_argument("--manifest", help="Manifiesto JSON de la ejecución")
    parser.add_argument("--out", help="Directorio de salida")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--noise", help="Preset de ruido")
    parser.add_argument("--shots", type=int)
    parser.add_argument("--workers", type=int)
    parser.add_argument("--compare", help="Directorio de otra ejecución (report)")
    parser.add_argument("--circuit", help="Archivo de circuitos (export-qasm); sin él se "
                        "exporta toda la suite de --manifest")
    parser.add_argument("--variant", type=int, default=0, help="Variante a exportar")
    parser.add_argument("--output", help="Archivo destino del texto QASM")
    parser.add_argument("--quiet", action="store_true", help="No imprimir progreso")
    return parser


def _ejecutar(args: argparse.Namespace):
    if args.etapa == "export-qasm" and args.circuit:
        cmd_export_qasm(args.circuit, args.variant, args.output)
        return
    if not args.manifest:
        if args.etapa == "export-qasm":
            raise ValueError("❌ export-qasm requiere --circuit o --manifest")
        raise ValueError(f"❌ La etapa '{args.etapa}' requiere --manifest")
    manifiesto = cargar_manifiesto(args.manifest, mostrar_info=not args.quiet)
    manifiesto = manifiesto.con_sobrescrituras(out=args.out, seed=args.seed, noise=args.noise,
                                               shots=args.shots, workers=args.workers)
    mostrar = not args.quiet
    etapas = {
        "generate": lambda: cmd_generate(manifiesto, mostrar),
        "run": lambda: cmd_run(manifiesto, mostrar),
        "featurize": lambda: cmd_featurize(manifiesto, mostrar),
        "score": lambda: cmd_score(manifiesto, mostrar),
        "fit": lambda: cmd_fit(manifiesto, mostrar),
        "report": lambda: cmd_report(manifiesto, args.compare, mostrar),
        "export-qasm": lambda: cmd_export_qasm_suite(manifiesto, mostrar),
    }
    etapas[args.etapa]()


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Ejecutar una etapa y devolver el código de salida."""
    args = crear_parser().parse_args(argv)
    try:
        _ejecutar(args)
    except FileNotFoundError as e:
        print(str(e), file=sys.stderr)
        return 3
    except ValueError as e:
        print(str(e), file=sys.stderr)
        return 2
    except KeyboardInterrupt:
        print("\n⚠️ Operación cancelada por el usuario", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
