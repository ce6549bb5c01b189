"""
Códigos Correctores de Errores
==============================

Tablas de código y circuitos de una ronda de síndrome para:
- Código de repetición (distancia 3 o 5, estados ONE o PLUS)
- Código de cinco qubits [[5,1,3]] (estados ZERO u ONE)
- Código de Steane [[7,1,3]] (estados ONE o PLUS)

Cada circuito prepara el estado lógico, mide una ronda de estabilizadores,
aplica la corrección de la tabla de búsqueda mediante condicionales y mide
el operador lógico de forma transversal.

Autor: Proyecto Probabilidades
Fecha: 18 de octubre de 2026
"""

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import stim

from circuito_dinamico import Circuito, build_circuit
from tableau_pauli import sintetizar_preparacion


FILAS_HAMMING = ((3, 4, 5, 6), (1, 2, 5, 6), (0, 2, 4, 6))
CHEQUEOS_CINCO = ("XZZXI", "IXZZX", "XIXZZ", "ZXIXZ")


@dataclass(frozen=True)
class TablasCodigo:
    """
    Descripción clásica de un código para decodificar y puntuar

    Parameters:
    -----------
    nombre : str
        Familia del código
    estabilizadores : tuple de str
        Generadores medidos, en el orden de los bits de síndrome
    logicos : dict
        {"X": X̄, "Z": Z̄} como cadenas de Pauli sobre los datos
    decodificador : dict
        síndrome (cadena de bits) -> corrección de Pauli
    clbits_sindrome : tuple de int
        Bits clásicos del síndrome, en orden de estabilizadores
    clbits_datos : tuple de int
        Bits de la lectura transversal (dato i -> clbit)
    chequeos_lectura : tuple de tuples
        Conjuntos de datos cuya paridad debe ser 0 en la lectura
    soporte_logico : tuple de int
        Datos cuya paridad da el valor lógico medido
    logico_esperado : int
        Paridad lógica esperada
    verificaciones : dict
        clbit de ancilla de lectura -> bit esperado
    """
    nombre: str
    estabilizadores: Tuple[str, ...]
    logicos: Dict[str, str]
    decodificador: Dict[str, str]
    clbits_sindrome: Tuple[int, ...]
    clbits_datos: Tuple[int, ...] = ()
    chequeos_lectura: Tuple[Tuple[int, ...], ...] = ()
    soporte_logico: Tuple[int, ...] = ()
    logico_esperado: int = 0
    verificaciones: Dict[int, int] = field(default_factory=dict)
    errores_corregibles: Tuple[str, ...] = ("X", "Y", "Z")

    def __post_init__(self):
        faltan = 2 ** len(self.estabilizadores) - len(self.decodificador)
        if faltan:
            raise ValueError(f"❌ El decodificador de {self.nombre} no cubre {faltan} síndromes")

    @property
    def num_datos(self) -> int:
        return len(self.estabilizadores[0])

    def sindrome(self, error: str) -> str:
        """Bits de síndrome que produce un error de Pauli sobre los datos."""
        e = stim.PauliString(error.replace("I", "_"))
        return "".join("0" if e.commutes(stim.PauliString(s.replace("I", "_"))) else "1"
                       for s in self.estabilizadores)

    def a_dict(self) -> dict:
        return {
            "name": self.nombre, "stabilizers": list(self.estabilizadores),
            "logicals": dict(self.logicos), "decoder": dict(sorted(self.decodificador.items())),
            "syndrome_clbits": list(self.clbits_sindrome), "data_clbits": list(self.clbits_datos),
            "readout_checks": [list(c) for c in self.chequeos_lectura],
            "logical_support": list(self.soporte_logico), "logical_expected": self.logico_esperado,
            "verifications": {str(k): v for k, v in self.verificaciones.items()},
            "correctable": list(self.errores_corregibles),
        }

    @classmethod
    def desde_dict(cls, datos: dict) -> "TablasCodigo":
        return cls(
            nombre=datos["name"], estabilizadores=tuple(datos["stabilizers"]),
            logicos=dict(datos["logicals"]), decodificador=dict(datos["decoder"]),
            clbits_sindrome=tuple(datos["syndrome_clbits"]),
            clbits_datos=tuple(datos.get("data_clbits", [])),
            chequeos_lectura=tuple(tuple(c) for c in datos.get("readout_checks", [])),
            soporte_logico=tuple(datos.get("logical_support", [])),
            logico_esperado=int(datos.get("logical_expected", 0)),
            verificaciones={int(k): int(v) for k, v in datos.get("verifications", {}).items()},
            errores_corregibles=tuple(datos.get("correctable", ("X", "Y", "Z"))))


def _peso(pauli: str) -> int:
    return sum(1 for l in pauli if l != "I")


def decodificador_minimo(estabilizadores: Sequence[str], candidatos: Sequence[str]) -> Dict[str, str]:
    """Tabla síndrome -> corrección de menor peso entre los candidatos."""
    tabla: Dict[str, str] = {}
    checks = [stim.PauliString(s.replace("I", "_")) for s in estabilizadores]
    for candidato in sorted(candidatos, key=lambda c: (_peso(c), c)):
        e = stim.PauliString(candidato.replace("I", "_"))
        clave = "".join("0" if e.commutes(s) else "1" for s in checks)
        tabla.setdefault(clave, candidato)
    return tabla


def errores_simples(n: int, letras: str = "XYZ") -> List[str]:
    """Todos los Paulis de peso 1 sobre n qubits con las letras dadas."""
    return ["I" * i + l + "I" * (n - i - 1) for i in range(n) for l in letras]


def verificar_decodificador(tablas: TablasCodigo) -> List[str]:
    """
    Errores corregibles que el decodificador NO devuelve al espacio de código

    Un error E con corrección C se corrige si E·C conmuta con todos los
    estabilizadores y con ambos operadores lógicos.
    """
    fallos = []
    checks = [stim.PauliString(s.replace("I", "_")) for s in tablas.estabilizadores]
    logicos = [stim.PauliString(l.replace("I", "_")) for l in tablas.logicos.values()]
    for error in errores_simples(tablas.num_datos, "".join(tablas.errores_corregibles)):
        correccion = tablas.decodificador[tablas.sindrome(error)]
        residuo = stim.PauliString(error.replace("I", "_")) * stim.PauliString(
            correccion.replace("I", "_"))
        if not all(residuo.commutes(o) for o in checks + logicos):
            fallos.append(error)
    return fallos


def _aplicar_pauli(b, pauli: str, datos: Sequence[int]):
    for letra, q in zip(pauli, datos):
        if letra == "X":
            b.x(q)
        elif letra == "Y":
            b.y(q)
        elif letra == "Z":
            b.z(q)


def _inyectar(b, error: Optional[Tuple[str, int]], datos: Sequence[int]):
    if error is None:
        return
    letra, indice = error
    if letra not in "XYZ" or len(letra) != 1:
        raise ValueError(f"❌ Error inyectado inválido: {letra}")
    if not 0 <= indice < len(datos):
        raise ValueError(f"❌ Índice de dato fuera de rango: {indice}")
    _aplicar_pauli(b, letra, [datos[indice]])


@dataclass(frozen=True)
class CircuitoQEC:
    """Circuito de una ronda de síndrome con sus tablas y pesos de estabilizador."""
    circuito: Circuito
    tablas: TablasCodigo
    pesos: Dict[int, int]


# ============================================================
# Código de repetición
# ============================================================

def circuito_repeticion(n_datos: int, inicial: str,
                        error: Optional[Tuple[str, int]] = None) -> CircuitoQEC:
    """
    Código de repetición de bit con ancillas intercaladas

    Parameters:
    -----------
    n_datos : int
        Distancia del código: 3 o 5
    inicial : str
        "ONE" (|111..⟩, lectura Z) o "PLUS" (GHZ, lectura X)
    error : tuple, opcional
        (letra, índice de dato) aplicado tras la codificación
    """
    if n_datos not in (3, 5):
        raise ValueError(f"❌ Distancia del código de repetición no soportada: {n_datos}")
    if inicial not in ("ONE", "PLUS"):
        raise ValueError(f"❌ Estado inicial inválido para el código de repetición: {inicial}")
    n_total = 2 * n_datos - 1
    datos = [2 * i for i in range(n_datos)]
    ancillas = [2 * i + 1 for i in range(n_datos - 1)]
    n_checks = n_datos - 1
    b = build_circuit(n_total, n_checks + n_datos)

    if inicial == "ONE":
        b.x(datos[0])
    else:
        b.h(datos[0])
    for d in datos[1:]:
        b.cx(datos[0], d)
    _inyectar(b, error, datos)

    for i, a in enumerate(ancillas):
        b.cx(datos[i], a)
        b.cx(datos[i + 1], a)
    for i, a in enumerate(ancillas):
        b.measure(a, i)

    estabilizadores = tuple("I" * i + "ZZ" + "I" * (n_datos - i - 2) for i in range(n_checks))
    candidatos = ["".join(p) for p in product("IX", repeat=n_datos)]
    decodificador = decodificador_minimo(estabilizadores, candidatos)
    sindromes = list(range(n_checks))
    for clave in sorted(decodificador):
        if "1" in clave:
            with b.si_igual(sindromes, clave) as rama:
                _aplicar_pauli(rama, decodificador[clave], datos)

    clbits_datos = tuple(range(n_checks, n_checks + n_datos))
    for d, cb in zip(datos, clbits_datos):
        if inicial == "PLUS":
            b.h(d)
        b.measure(d, cb)

    tablas = TablasCodigo(
        nombre="REP_CODE", estabilizadores=estabilizadores,
        logicos={"X": "X" * n_datos, "Z": "Z" + "I" * (n_datos - 1)},
        decodificador=decodificador, clbits_sindrome=tuple(sindromes),
        clbits_datos=clbits_datos,
        chequeos_lectura=tuple((i, i + 1) for i in range(n_checks)) if inicial == "ONE" else (),
        soporte_logico=(0,) if inicial == "ONE" else tuple(range(n_datos)),
        logico_esperado=1 if inicial == "ONE" else 0,
        errores_corregibles=("X",))
    circuito = b.finalizar(system_qubits=datos, nombre="REP_CODE",
                           params={"n_data": n_datos, "initial": inicial},
                           registros={"out": clbits_datos, "syndrome": tuple(sindromes)})
    return CircuitoQEC(circuito, tablas, {i: 2 for i in sindromes})


# ============================================================
# Código de Steane
# ============================================================

def _indice_hamming(bits: str) -> int:
    """Qubit señalado por un síndrome de Hamming (r1 r2 r3) o −1 si es trivial."""
    return int(bits, 2) - 1


def circuito_steane(inicial: str, error: Optional[Tuple[str, int]] = None) -> CircuitoQEC:
    """
    Código de Steane: 7 datos, 6 ancillas de chequeo y 1 ancilla lógica

    Los chequeos Z (filas de Hamming) detectan errores X y los chequeos X
    detectan errores Z; el valor binario de cada trío de síndrome señala
    el qubit afectado.
    """
    if inicial not in ("ONE", "PLUS"):
        raise ValueError(f"❌ Estado inicial inválido para Steane: {inicial}")
    datos = list(range(7))
    anc_z, anc_x, anc_logica = [7, 8, 9], [10, 11, 12], 13
    b = build_circuit(14, 14)

    for raiz in (3, 1, 0):
        b.h(raiz)
    for raiz, fila in zip((3, 1, 0), FILAS_HAMMING):
        for q in fila:
            if q != raiz:
                b.cx(raiz, q)
    if inicial == "ONE":
        for d in datos:
            b.x(d)
    else:
        for d in datos:
            b.h(d)
    _inyectar(b, error, datos)

    for a, fila in zip(anc_z, FILAS_HAMMING):
        for q in fila:
            b.cx(q, a)
    for a, fila in zip(anc_x, FILAS_HAMMING):
        b.h(a)
        for q in fila:
            b.cx(a, q)
        b.h(a)
    for k, a in enumerate(anc_z + anc_x):
        b.measure(a, k)

    for valor in range(1, 8):
        clave = format(valor, "03b")
        with b.si_igual([0, 1, 2], clave) as rama:
            rama.x(_indice_hamming(clave))
    for valor in range(1, 8):
        clave = format(valor, "03b")
        with b.si_igual([3, 4, 5], clave) as rama:
            rama.z(_indice_hamming(clave))

    if inicial == "ONE":
        for d in datos:
            b.cx(d, anc_logica)
    else:
        b.h(anc_logica)
        for d in datos:
            b.cx(anc_logica, d)
        b.h(anc_logica)
    b.measure(anc_logica, 6)

    clbits_datos = tuple(range(7, 14))
    for d, cb in zip(datos, clbits_datos):
        if inicial == "PLUS":
            b.h(d)
        b.measure(d, cb)

    filas_z = tuple("".join("Z" if q in f else "I" for q in range(7)) for f in FILAS_HAMMING)
    filas_x = tuple(f.replace("Z", "X") for f in filas_z)
    decodificador = {}
    for sz in product("01", repeat=3):
        for sx in product("01", repeat=3):
            letras = ["I"] * 7
            qx, qz = _indice_hamming("".join(sz)), _indice_hamming("".join(sx))
            if qx >= 0:
                letras[qx] = "X"
            if qz >= 0:
                letras[qz] = "Y" if letras[qz] == "X" else "Z"
            decodificador["".join(sz) + "".join(sx)] = "".join(letras)
    esperado = 1 if inicial == "ONE" else 0
    tablas = TablasCodigo(
        nombre="STEANE_CODE", estabilizadores=filas_z + filas_x,
        logicos={"X": "X" * 7, "Z": "Z" * 7}, decodificador=decodificador,
        clbits_sindrome=tuple(range(6)), clbits_datos=clbits_datos,
        chequeos_lectura=FILAS_HAMMING, soporte_logico=tuple(range(7)),
        logico_esperado=esperado, verificaciones={6: esperado})
    circuito = b.finalizar(system_qubits=datos, nombre="STEANE_CODE",
                           params={"initial": inicial},
                           registros={"out": clbits_datos, "syndrome": tuple(range(6)),
                                      "logical": (6,)})
    return CircuitoQEC(circuito, tablas, {k: 4 for k in range(6)})


# ============================================================
# Código de cinco qubits
# ============================================================

def _medir_chequeo(b, chequeo: str, datos: Sequence[int], ancilla: int, clbit: int):
    b.h(ancilla)
    for letra, q in zip(chequeo, datos):
        if letra == "X":
            b.cx(ancilla, q)
        elif letra == "Z":
            b.cz(ancilla, q)
    b.h(ancilla)
    b.measure(ancilla, clbit)


def circuito_cinco_qubits(inicial: str, error: Optional[Tuple[str, int]] = None) -> CircuitoQEC:
    """
    Código [[5,1,3]]: 5 datos, 4 ancillas de síndrome, ancilla de Z̄ y
    ancilla de verificación de XZZXI tras la corrección

    La preparación se sintetiza con stim a partir de los cuatro chequeos y
    ±ZZZZZ, y la tabla cubre los 15 errores de peso 1.
    """
    if inicial not in ("ZERO", "ONE"):
        raise ValueError(f"❌ Estado inicial inválido para el código de cinco qubits: {inicial}")
    datos = list(range(5))
    ancillas, anc_logica, anc_verif = [5, 6, 7, 8], 9, 10
    b = build_circuit(11, 11)

    logico = ("+" if inicial == "ZERO" else "-") + "ZZZZZ"
    for nombre, qubits in sintetizar_preparacion(["+" + c for c in CHEQUEOS_CINCO] + [logico]):
        b.gate(nombre, qubits)
    _inyectar(b, error, datos)

    for k, (chequeo, a) in enumerate(zip(CHEQUEOS_CINCO, ancillas)):
        _medir_chequeo(b, chequeo, datos, a, k)

    decodificador = decodificador_minimo(CHEQUEOS_CINCO, ["IIIII"] + errores_simples(5))
    for clave in sorted(decodificador):
        if "1" in clave:
            with b.si_igual([0, 1, 2, 3], clave) as rama:
                _aplicar_pauli(rama, decodificador[clave], datos)

    for d in datos:
        b.cx(d, anc_logica)
    b.measure(anc_logica, 4)
    _medir_chequeo(b, CHEQUEOS_CINCO[0], datos, anc_verif, 5)

    clbits_datos = tuple(range(6, 11))
    for d, cb in zip(datos, clbits_datos):
        b.measure(d, cb)

    esperado = 0 if inicial == "ZERO" else 1
    tablas = TablasCodigo(
        nombre="FIVE_QUBIT_CODE", estabilizadores=CHEQUEOS_CINCO,
        logicos={"X": "XXXXX", "Z": "ZZZZZ"}, decodificador=decodificador,
        clbits_sindrome=(0, 1, 2, 3), clbits_datos=clbits_datos,
        soporte_logico=tuple(range(5)), logico_esperado=esperado,
        verificaciones={4: esperado, 5: 0})
    circuito = b.finalizar(system_qubits=datos, nombre="FIVE_QUBIT_CODE",
                           params={"initial": inicial},
                           registros={"out": clbits_datos, "syndrome": (0, 1, 2, 3),
                                      "logical": (4,), "verify": (5,)})
    return CircuitoQEC(circuito, tablas, {k: 4 for k in range(4)})
