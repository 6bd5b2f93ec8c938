/* tslint:disable */
/* eslint-disable */

/**
 * Cyclic min-plus convolution of two periodic sequences.
 */
export function cyclic_convolve(u: string, v: string, mode: string): string;

/**
 * Picard iteration of `f -> (lambda * f) (+) g` from `|x|`.
 */
export function fixed_point(lambda: string, g: string, tol: string): string;

/**
 * Inf-convolution of two convex Katetov curves on the line.
 */
export function pl_convolve(f: string, g: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly cyclic_convolve: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number];
    readonly fixed_point: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number];
    readonly pl_convolve: (a: number, b: number, c: number, d: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
