"""
Puntajes de Fidelidad por Aplicación
====================================

Puntajes normalizados a [0, 1] para cada familia de benchmarks:
- Fidelidad de Hellinger entre distribuciones (GHZ, QFT, IPE)
- Estimación directa de fidelidad (DFE) por muestreo de Paulis para
  los circuitos de Clifford
- Error relativo de la magnetización media (TFIM)
- Uno menos la tasa de error lógico (códigos correctores)
- Barrido de ruido con medianas por nivel de error

Autor: Proyecto Probabilidades
Fecha: 18 de octubre de 2026
"""

from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Dict, List, Mapping, Optional, Sequence, Union

import numpy as np
import pandas as pd

from circuito_dinamico import GATE, MEASURE, Circuito, Instruccion, build_circuit, strip_final_measurements
from codigos_correctores import TablasCodigo
from generadores_benchmarks import (
    FAMILIAS_CLIFFORD, BenchmarkGenerado, bits_fase, cadenas_qft, generar,
)
from simulador_dinamico import (
    DistribucionConteos, ModeloRuido, expectation_z, run, simular_estado, MAX_QUBITS,
)
from tableau_pauli import CadenaPauli, cambio_base_medicion, prepare_pauli_eigenstate, propagate_pauli


TOLERANCIA_NORMALIZACION = 1e-9

Conteos = Union[DistribucionConteos, Mapping[str, float]]


@dataclass(frozen=True)
class ResultadoPuntaje:
    """Puntaje en [0, 1] (se recorta) con detalles por familia."""
    score: float
    familia: str
    detalles: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "score", float(min(1.0, max(0.0, self.score))))

    def a_dict(self) -> dict:
        return {"score": self.score, "family": self.familia, "details": self.detalles}


@dataclass(frozen=True)
class ConfiguracionDFE:
    """
    Parameters:
    -----------
    k : int
        Número de cadenas de Pauli muestreadas
    shots : int
        Disparos por muestra
    """
    k: int = 30
    shots: int = 1024

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"❌ k debe ser al menos 1 (recibido {self.k})")
        if self.shots < 1:
            raise ValueError(f"❌ shots debe ser al menos 1 (recibido {self.shots})")


# ============================================================
# Distribuciones
# ============================================================

def _registro(conteos: Conteos) -> Mapping[str, float]:
    return conteos.register if isinstance(conteos, DistribucionConteos) else conteos


def normalizar(conteos: Conteos) -> Dict[str, float]:
    """Convertir conteos en probabilidades."""
    registro = _registro(conteos)
    total = float(sum(registro.values()))
    if total <= 0:
        raise ValueError("❌ No hay conteos para normalizar")
    return {k: v / total for k, v in registro.items()}


def _validar_distribucion(p: Mapping[str, float], nombre: str):
    total = float(sum(p.values()))
    if abs(total - 1.0) > TOLERANCIA_NORMALIZACION or any(v < 0 for v in p.values()):
        raise ValueError(f"❌ La distribución {nombre} no está normalizada (suma={total})")


def hellinger_fidelity(p: Mapping[str, float], q: Mapping[str, float]) -> float:
    """
    Fidelidad de Hellinger (Σ_x √(p_x q_x))²

    Parameters:
    -----------
    p, q : dict
        Distribuciones normalizadas sobre cadenas de bits

    Returns:
    --------
    float
        Valor en [0, 1]; 1 si y solo si p = q
    """
    _validar_distribucion(p, "p")
    _validar_distribucion(q, "q")
    bc = sum(np.sqrt(p[x] * q[x]) for x in set(p) & set(q))
    return float(min(1.0, bc ** 2))


def ghz_score(conteos: Conteos, n: int) -> ResultadoPuntaje:
    """Hellinger frente a {0^n: 1/2, 1^n: 1/2}."""
    p = normalizar(conteos)
    malas = [x for x in p if len(x) != n]
    if malas:
        raise ValueError(f"❌ Cadenas de longitud distinta de {n}: {malas[:3]}")
    ideal = {"0" * n: 0.5, "1" * n: 0.5}
    return ResultadoPuntaje(hellinger_fidelity(p, ideal), "GHZ", {"n": n})


def ipe_score(conteos: Conteos, theta: float, m: int) -> ResultadoPuntaje:
    """Hellinger frente a la masa puntual en la expansión de θ con m bits."""
    referencia = bits_fase(theta, m)
    f = hellinger_fidelity(normalizar(conteos), {referencia: 1.0})
    return ResultadoPuntaje(f, "IPE", {"reference": referencia})


def puntaje_distribucion(conteos: Conteos, bench: BenchmarkGenerado) -> ResultadoPuntaje:
    """Hellinger frente a la distribución ideal declarada por el benchmark."""
    ideal = bench.referencia["distribution"]
    return ResultadoPuntaje(hellinger_fidelity(normalizar(conteos), ideal), bench.familia)


# ============================================================
# QFT
# ============================================================

def qft_score_desde_conteos(variantes: Sequence[tuple], familia: str = "QFT_M") -> ResultadoPuntaje:
    """Promedio de Hellinger sobre pares (s, conteos) contra la delta en s."""
    if not variantes:
        raise ValueError("❌ Se requiere al menos una variante de QFT")
    por_cadena = {s: hellinger_fidelity(normalizar(c), {s: 1.0}) for s, c in variantes}
    return ResultadoPuntaje(float(np.mean(list(por_cadena.values()))), familia,
                            {"per_bitstring": por_cadena})


def qft_score(familia: str, n: int, nm: Optional[ModeloRuido] = None, seed: int = 0,
              shots: int = 4096, workers: int = 1) -> ResultadoPuntaje:
    """Protocolo QFT: tres cadenas aleatorias sembradas, cada una puntuada por Hellinger."""
    if familia not in ("QFT_M", "PARTIAL_QFT_M"):
        raise ValueError(f"❌ Familia QFT inválida: {familia}")
    if n < 2:
        raise ValueError(f"❌ QFT requiere n ≥ 2 (recibido {n})")
    variantes = []
    for bench in generar(familia, n, seed=seed):
        conteos = run(bench.circuito, shots, nm, seed=seed, workers=workers)
        variantes.append((bench.referencia["s"], conteos))
    return qft_score_desde_conteos(variantes, familia)


# ============================================================
# DFE para circuitos de Clifford
# ============================================================

@dataclass(frozen=True)
class MuestraDFE:
    """Una cadena de Pauli muestreada, su propagación y el circuito que la estima."""
    pauli: CadenaPauli
    propagada: CadenaPauli
    circuito: Optional[Circuito]
    clbits: tuple = ()

    def estimar(self, conteos: Optional[DistribucionConteos]) -> float:
        """Media de signo·(−1)^{paridad}; la identidad contribuye exactamente 1."""
        if self.circuito is None:
            return 1.0
        total = sum(conteos.registros.values())
        suma = 0.0
        for cadena, n in conteos.registros.items():
            paridad = sum(int(cadena[c]) for c in self.clbits) % 2
            suma += n * (-1) ** paridad
        return self.propagada.signo * suma / total


def _compuertas(nombres: Sequence[str], q: int) -> List[Instruccion]:
    return [Instruccion(GATE, nombre=nombre, qubits=(q,)) for nombre in nombres]


def semilla_muestra(seed: int, indice: int) -> int:
    """Semilla de simulación de la muestra DFE `indice`."""
    return int(np.random.SeedSequence([int(seed), int(indice)]).generate_state(1)[0])


def _validar_clifford(bench: BenchmarkGenerado):
    if bench.familia not in FAMILIAS_CLIFFORD:
        raise ValueError(f"❌ DFE solo aplica a familias Clifford, no a {bench.familia}")


def muestra_dfe(bench: BenchmarkGenerado, letras: str) -> MuestraDFE:
    """
    Circuito de estimación de una cadena de Pauli sobre los qubits de datos

    Prepara el autoestado +1 de P, ejecuta el circuito sin mediciones
    finales y mide P' = C·P·C† tras el cambio de base a Z.
    """
    _validar_clifford(bench)
    ref = bench.referencia
    datos = list(ref["data_qubits"])
    if len(letras) != len(datos):
        raise ValueError(f"❌ La cadena '{letras}' no cubre los {len(datos)} qubits de datos")
    P = CadenaPauli(letras)
    if P.peso == 0:
        return MuestraDFE(P, P, None)
    operaciones = [(nombre, tuple(qubits)) for nombre, qubits in ref["operations"]]
    cuerpo = strip_final_measurements(bench.circuito)
    propagada = propagate_pauli(operaciones, P)
    prefijo: List[Instruccion] = []
    for letra, q in zip(P.letras, datos):
        prefijo += _compuertas(prepare_pauli_eigenstate(letra), q)
    sufijo: List[Instruccion] = []
    clbits = []
    for letra, q in zip(propagada.letras, datos):
        if letra == "I":
            continue
        clbit = cuerpo.num_clbits + len(clbits)
        sufijo += _compuertas(cambio_base_medicion(letra), q)
        sufijo.append(Instruccion(MEASURE, qubits=(q,), clbit=clbit))
        clbits.append(clbit)
    circuito = cuerpo.reemplazar(
        prefijo + list(cuerpo.instrucciones) + sufijo,
        num_clbits=cuerpo.num_clbits + len(clbits),
        registros={"out": tuple(clbits)})
    return MuestraDFE(P, propagada, circuito, tuple(clbits))


def muestras_dfe(bench: BenchmarkGenerado, k: int, seed: int) -> List[MuestraDFE]:
    """Los k circuitos de estimación para cadenas de Pauli uniformes sobre los datos."""
    _validar_clifford(bench)
    n = len(bench.referencia["data_qubits"])
    rng = np.random.default_rng(np.random.SeedSequence([int(seed), n]))
    return [muestra_dfe(bench, "".join(rng.choice(list("IXYZ"), size=n))) for _ in range(k)]


def muestras_dfe_completas(bench: BenchmarkGenerado) -> List[MuestraDFE]:
    """
    Las 4^n cadenas de Pauli en orden lexicográfico sobre IXYZ

    Con valores esperados exactos, el promedio sobre todas ellas es la
    fidelidad de proceso.
    """
    _validar_clifford(bench)
    n = len(bench.referencia["data_qubits"])
    if n > 6:
        raise ValueError(f"❌ Enumerar 4^{n} cadenas de Pauli no es práctico")
    return [muestra_dfe(bench, "".join(letras)) for letras in product("IXYZ", repeat=n)]


def dfe_desde_conteos(bench: BenchmarkGenerado, muestras: Sequence[MuestraDFE],
                      conteos: Sequence[Optional[DistribucionConteos]]) -> ResultadoPuntaje:
    estimaciones = [m.estimar(c) for m, c in zip(muestras, conteos)]
    detalles = {"estimates": [{"pauli": str(m.pauli), "propagated": str(m.propagada),
                               "estimate": e} for m, e in zip(muestras, estimaciones)]}
    return ResultadoPuntaje(float(np.mean(estimaciones)), bench.familia, detalles)


def dfe_clifford_score(bench: BenchmarkGenerado, cfg: Optional[ConfiguracionDFE] = None,
                       nm: Optional[ModeloRuido] = None, seed: int = 0,
                       workers: int = 1) -> ResultadoPuntaje:
    """
    Estimación directa de fidelidad de un benchmark Clifford

    Returns:
    --------
    ResultadoPuntaje
        Promedio de ⟨P'⟩ sobre las k muestras, recortado a [0, 1]
    """
    cfg = cfg or ConfiguracionDFE()
    muestras = muestras_dfe(bench, cfg.k, seed)
    conteos = []
    for i, muestra in enumerate(muestras):
        if muestra.circuito is None:
            conteos.append(None)
            continue
        conteos.append(run(muestra.circuito, cfg.shots, nm, seed=semilla_muestra(seed, i),
                           workers=workers))
    return dfe_desde_conteos(bench, muestras, conteos)


# ============================================================
# TFIM
# ============================================================

def ideal_tfim_mz(n: int, steps: int, J: float = 1.0, h: float = 1.0, dt: float = 0.1) -> float:
    """
    ⟨M_z⟩ = (1/n)·Σ⟨σ_z^i⟩ del circuito de Trotter sin ancillas

    Cada paso: R_X(2·h·dt) en cada qubit y R_ZZ(2·J·dt) en enlaces pares y
    luego impares.
    """
    if n > MAX_QUBITS:
        raise ValueError(f"❌ n={n} excede el límite de {MAX_QUBITS} qubits")
    if n < 1 or steps < 0:
        raise ValueError(f"❌ Parámetros TFIM inválidos: n={n}, steps={steps}")
    b = build_circuit(n, 1)
    enlaces = list(range(0, n - 1, 2)) + list(range(1, n - 1, 2))
    for _ in range(steps):
        for q in range(n):
            b.rx(2 * h * dt, q)
        for i in enlaces:
            b.rzz(2 * J * dt, i, i + 1)
    probabilidades = np.abs(simular_estado(b.finalizar())) ** 2
    z = []
    for q in range(n):
        p1 = float(np.take(probabilidades, 1, axis=q).sum())
        z.append(1.0 - 2.0 * p1)
    return float(np.clip(np.mean(z), -1.0, 1.0))


def magnetizacion_observada(conteos: Conteos) -> float:
    registro = _registro(conteos)
    n = len(next(iter(registro)))
    return expectation_z(registro, list(range(n)))


def tfim_score(observada: float, ideal: float) -> ResultadoPuntaje:
    """1 − |ideal − observada| / |2·ideal|, recortado a [0, 1]."""
    if abs(ideal) < 1e-12:
        raise ValueError("❌ ⟨M_z⟩ ideal es 0: el puntaje no está definido; "
                         "elija otros (n, steps, dt)")
    valor = 1.0 - abs(ideal - observada) / abs(2.0 * ideal)
    return ResultadoPuntaje(valor, "TFIM", {"observed_mz": observada, "ideal_mz": ideal})


# ============================================================
# Corrección de errores
# ============================================================

def qec_score(conteos: Conteos, tablas: TablasCodigo) -> ResultadoPuntaje:
    """
    Fracción de disparos en el espacio de código con el valor lógico esperado

    Se usan los registros completos: bits de las ancillas de lectura, paridades
    de los chequeos diagonales en la lectura transversal y la paridad lógica.
    """
    registros = conteos.registros if isinstance(conteos, DistribucionConteos) else conteos
    if not registros:
        raise ValueError("❌ No hay registros para puntuar")
    necesarios = list(tablas.clbits_sindrome) + list(tablas.clbits_datos) + list(tablas.verificaciones)
    largo = max(necesarios) + 1
    buenos = 0.0
    total = 0.0
    sindromes: Counter = Counter()
    for cadena, n in registros.items():
        if len(cadena) < largo or set(cadena) - {"0", "1"}:
            raise ValueError(f"❌ Registro mal formado: '{cadena}'")
        total += n
        sindromes["".join(cadena[c] for c in tablas.clbits_sindrome)] += n
        datos = [int(cadena[c]) for c in tablas.clbits_datos]
        ok = all(int(cadena[c]) == v for c, v in tablas.verificaciones.items())
        ok = ok and all(sum(datos[i] for i in chequeo) % 2 == 0 for chequeo in tablas.chequeos_lectura)
        ok = ok and sum(datos[i] for i in tablas.soporte_logico) % 2 == tablas.logico_esperado
        if ok:
            buenos += n
    return ResultadoPuntaje(buenos / total, tablas.nombre,
                            {"syndromes": dict(sorted(sindromes.items()))})


# ============================================================
# Despacho y barrido de ruido
# ============================================================

def puntuar_conteos(bench: BenchmarkGenerado, conteos: DistribucionConteos) -> ResultadoPuntaje:
    """Puntuar un benchmark no Clifford a partir de sus conteos."""
    tipo = bench.referencia["kind"]
    if bench.familia in ("GHZ", "GHZ_RESET"):
        n = len(next(iter(bench.referencia["distribution"])))
        return ResultadoPuntaje(ghz_score(conteos, n).score, bench.familia, {"n": n})
    if bench.familia == "IPE":
        return ipe_score(conteos, bench.referencia["theta"], bench.referencia["m_bits"])
    if tipo == "distribution":
        return puntaje_distribucion(conteos, bench)
    if tipo == "tfim":
        r = bench.referencia
        return tfim_score(magnetizacion_observada(conteos),
                          ideal_tfim_mz(r["n_data"], r["steps"], r["J"], r["h"], r["dt"]))
    if tipo == "qec":
        return qec_score(conteos, TablasCodigo.desde_dict(bench.referencia["tables"]))
    raise ValueError(f"❌ La familia {bench.familia} requiere DFE")


def puntuar_benchmark(bench: BenchmarkGenerado, nm: Optional[ModeloRuido] = None,
                      seed: int = 0, shots: int = 4096, cfg: Optional[ConfiguracionDFE] = None,
                      workers: int = 1) -> ResultadoPuntaje:
    """Ejecutar y puntuar cualquier benchmark con el puntaje de su familia."""
    if bench.familia in FAMILIAS_CLIFFORD:
        return dfe_clifford_score(bench, cfg or ConfiguracionDFE(shots=shots), nm, seed, workers)
    return puntuar_conteos(bench, run(bench.circuito, shots, nm, seed=seed, workers=workers))


def barrido_ruido(bench: BenchmarkGenerado, valores_p2: Sequence[float],
                  semillas: Sequence[int] = tuple(range(10)),
                  ruido_base: Optional[ModeloRuido] = None, shots: int = 1024,
                  cfg: Optional[ConfiguracionDFE] = None) -> pd.DataFrame:
    """
    Mediana del puntaje por nivel de error de dos qubits

    Returns:
    --------
    pd.DataFrame
        Columnas p2, median_score, min_score, max_score
    """
    base = ruido_base or ModeloRuido()
    filas = []
    for p2 in valores_p2:
        nm = ModeloRuido(p1=base.p1, p2=float(p2), pm=base.pm, pidle=base.pidle)
        puntajes = [puntuar_benchmark(bench, nm, seed=s, shots=shots, cfg=cfg).score
                    for s in semillas]
        filas.append({"p2": float(p2), "median_score": float(np.median(puntajes)),
                      "min_score": float(np.min(puntajes)), "max_score": float(np.max(puntajes))})
    return pd.DataFrame(filas)
