"""
Configuración de Ejecuciones de Benchmarks
==========================================

Carga y validación de manifiestos JSON:
- Suite de familias × tamaños (qubits totales)
- Presets de ruido integrados y definidos por el usuario
- Rangos de tamaño de referencia por familia (solo advertencias)

Autor: Proyecto Probabilidades
Fecha: 18 de octubre de 2026
"""

import json
import warnings
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Any

from simulador_dinamico import ModeloRuido


FAMILIAS = (
    "GHZ", "GHZ_RESET", "LR_CNOT", "LR_CNOT_SPARSE", "CNOT_LADDER", "FANOUT",
    "QFT_M", "PARTIAL_QFT_M", "IPE", "TFIM", "REP_CODE", "FIVE_QUBIT_CODE", "STEANE_CODE",
)

# Qubits totales admitidos por familia (mínimo, máximo) o valores exactos
RANGOS_REFERENCIA: Dict[str, Any] = {
    "GHZ": (3, 59), "GHZ_RESET": (3, 59), "CNOT_LADDER": (3, 59), "FANOUT": (5, 61),
    "LR_CNOT": (4, 32), "LR_CNOT_SPARSE": (5, 61), "QFT_M": (2, 20), "PARTIAL_QFT_M": (2, 20),
    "IPE": (2,), "TFIM": (5, 59), "REP_CODE": (5, 9), "FIVE_QUBIT_CODE": (11,),
    "STEANE_CODE": (14,),
}

PRESETS_RUIDO: Dict[str, ModeloRuido] = {
    "noiseless": ModeloRuido(),
    "ibm-like": ModeloRuido(p1=1e-4, p2=1e-3, pm=5e-3, pidle=1e-4),
    "helios-like": ModeloRuido(p1=2.5e-5, p2=8e-4, pm=1e-6, pidle=2.5e-5),
}

SHOTS_POR_DEFECTO = 4096


def advertir_rango(familia: str, n_total: int) -> bool:
    """
    Emitir una advertencia si el tamaño cae fuera del rango de referencia

    Returns:
    --------
    bool
        True si el tamaño está dentro del rango
    """
    rango = RANGOS_REFERENCIA.get(familia)
    if rango is None:
        return True
    if familia == "REP_CODE":
        dentro = n_total in rango
    elif len(rango) == 1:
        dentro = n_total == rango[0]
    else:
        dentro = rango[0] <= n_total <= rango[1]
    if not dentro:
        warnings.warn(f"⚠️ {familia} con {n_total} qubits está fuera del rango de referencia {rango}")
    return dentro


@dataclass
class ManifiestoEjecucion:
    """
    Manifiesto de una ejecución completa

    Parameters:
    -----------
    suite : dict
        familia -> lista de (n_total, parámetros extra)
    noise : str
        Nombre del preset de ruido
    shots : int
        Disparos por circuito
    seed : int
        Semilla global
    out : str
        Directorio de salida
    workers : int
        Hilos de simulación
    presets : dict
        Presets de ruido disponibles (integrados + usuario)
    """
    suite: Dict[str, List[Tuple[int, Dict[str, Any]]]]
    noise: str = "noiseless"
    shots: int = SHOTS_POR_DEFECTO
    seed: int = 0
    out: str = "resultados"
    workers: int = 1
    presets: Dict[str, ModeloRuido] = field(default_factory=lambda: dict(PRESETS_RUIDO))

    def __post_init__(self):
        self.validar()

    def validar(self):
        if not self.suite:
            raise ValueError("❌ La suite del manifiesto está vacía")
        for familia, tamanos in self.suite.items():
            if familia not in FAMILIAS:
                raise ValueError(f"❌ Familia desconocida: {familia}")
            for n_total, _ in tamanos:
                if int(n_total) < 1:
                    raise ValueError(f"❌ Tamaño inválido para {familia}: {n_total}")
        if self.noise not in self.presets:
            raise ValueError(f"❌ Preset de ruido desconocido: {self.noise}")
        if self.shots < 1:
            raise ValueError(f"❌ shots debe ser al menos 1 (recibido {self.shots})")
        if self.workers < 1:
            raise ValueError(f"❌ workers debe ser al menos 1 (recibido {self.workers})")

    @property
    def modelo_ruido(self) -> ModeloRuido:
        return self.presets[self.noise]

    @property
    def directorio(self) -> Path:
        return Path(self.out)

    def con_sobrescrituras(self, **cambios) -> "ManifiestoEjecucion":
        """Copia con los valores de la línea de comandos que no sean None."""
        return replace(self, **{k: v for k, v in cambios.items() if v is not None})

    def entradas(self) -> List[Tuple[str, int, Dict[str, Any]]]:
        """(familia, n_total, parámetros) en orden determinista."""
        return [(familia, int(n), params)
                for familia in sorted(self.suite)
                for n, params in self.suite[familia]]

    def a_dict(self) -> dict:
        return {
            "suite": {f: [{"sizes": [n], "params": p} if p else n for n, p in t]
                      for f, t in sorted(self.suite.items())},
            "noise": self.noise, "shots": self.shots, "seed": self.seed,
            "out": self.out, "workers": self.workers,
            "noise_presets": {k: v.a_dict() for k, v in sorted(self.presets.items())
                              if k not in PRESETS_RUIDO},
        }


def _normalizar_suite(suite: dict) -> Dict[str, List[Tuple[int, Dict[str, Any]]]]:
    normalizada: Dict[str, List[Tuple[int, Dict[str, Any]]]] = {}
    for familia, entrada in suite.items():
        if isinstance(entrada, dict):
            tamanos, params = entrada.get("sizes", []), dict(entrada.get("params", {}))
            normalizada[familia] = [(int(n), params) for n in tamanos]
        elif isinstance(entrada, list):
            lista = []
            for item in entrada:
                if isinstance(item, dict):
                    for n in item.get("sizes", []):
                        lista.append((int(n), dict(item.get("params", {}))))
                else:
                    lista.append((int(item), {}))
            normalizada[familia] = lista
        else:
            raise ValueError(f"❌ Entrada de suite inválida para {familia}: {entrada!r}")
    return normalizada


def manifiesto_desde_dict(datos: dict) -> ManifiestoEjecucion:
    """Construir un manifiesto validado a partir de un diccionario JSON."""
    if "suite" not in datos:
        raise ValueError("❌ El manifiesto no define 'suite'")
    presets = dict(PRESETS_RUIDO)
    for nombre, valores in datos.get("noise_presets", {}).items():
        presets[nombre] = ModeloRuido.desde_dict(valores)
    return ManifiestoEjecucion(
        suite=_normalizar_suite(datos["suite"]),
        noise=datos.get("noise", "noiseless"),
        shots=int(datos.get("shots", SHOTS_POR_DEFECTO)),
        seed=int(datos.get("seed", 0)),
        out=str(datos.get("out", "resultados")),
        workers=int(datos.get("workers", 1)),
        presets=presets)


def cargar_manifiesto(ruta: str, mostrar_info: bool = False) -> ManifiestoEjecucion:
    """
    Cargar un manifiesto JSON desde disco

    Parameters:
    -----------
    ruta : str
        Ruta del archivo
    mostrar_info : bool
        Imprimir un resumen de la suite

    Returns:
    --------
    ManifiestoEjecucion
    """
    archivo = Path(ruta)
    if not archivo.exists():
        raise FileNotFoundError(f"❌ Manifiesto no encontrado: {ruta}")
    try:
        datos = json.loads(archivo.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ValueError(f"❌ Manifiesto JSON inválido ({ruta}): {e}") from e
    manifiesto = manifiesto_desde_dict(datos)
    if mostrar_info:
        print(f"📁 Manifiesto cargado: {ruta}")
        for familia, tamanos in sorted(manifiesto.suite.items()):
            print(f"   {familia:<16} tamaños: {[n for n, _ in tamanos]}")
        print(f"   ruido={manifiesto.noise} shots={manifiesto.shots} seed={manifiesto.seed}")
    return manifiesto


def resolver_preset(nombre: str, presets: Optional[Dict[str, ModeloRuido]] = None) -> ModeloRuido:
    presets = presets or PRESETS_RUIDO
    if nombre not in presets:
        raise ValueError(f"❌ Preset de ruido desconocido: {nombre}")
    return presets[nombre]
