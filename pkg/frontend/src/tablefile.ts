import fs from "node:fs";

/** Header of a binary embedding table; integers wider than 32 bits are bigint. */
export interface TableHeader {
  version: number;
  d: number;
  V: number;
  randomState: bigint;
  N: number;
  B: bigint;
  rollingBase: number;
}

export interface Table {
  header: TableHeader;
  /** Row-major V*d float32 payload; row v is the vector of vocab line v. */
  data: Float32Array;
}

export const HEADER_SIZE = 40;
const MAGIC = "EELB";
const SUPPORTED_VERSION = 1;

export class TableFormatError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "TableFormatError";
  }
}

function parseHeader(buf: Buffer, label: string): TableHeader {
  if (buf.length < HEADER_SIZE) {
    throw new TableFormatError(`${label}: truncated header (${buf.length} bytes)`);
  }
  if (buf.toString("latin1", 0, 4) !== MAGIC) {
    throw new TableFormatError(`${label}: bad magic`);
  }
  const view = new DataView(buf.buffer, buf.byteOffset, HEADER_SIZE);
  const header: TableHeader = {
    version: view.getUint32(4, true),
    d: view.getUint32(8, true),
    V: view.getUint32(12, true),
    randomState: view.getBigUint64(16, true),
    N: view.getUint32(24, true),
    B: view.getBigUint64(28, true),
    rollingBase: view.getUint32(36, true),
  };
  if (header.version !== SUPPORTED_VERSION) {
    throw new TableFormatError(`${label}: unsupported version ${header.version}`);
  }
  return header;
}

/** Load a binary table. The payload is a view when alignment allows, a copy otherwise. */
export function readTable(filePath: string): Table {
  const buf = fs.readFileSync(filePath);
  const header = parseHeader(buf, filePath);
  const expected = header.V * header.d * 4;
  if (buf.length - HEADER_SIZE !== expected) {
    throw new TableFormatError(
      `${filePath}: payload is ${buf.length - HEADER_SIZE} bytes, expected ${expected}`);
  }
  const start = buf.byteOffset + HEADER_SIZE;
  const data = start % Float32Array.BYTES_PER_ELEMENT === 0
    ? new Float32Array(buf.buffer, start, header.V * header.d)
    : new Float32Array(new Uint8Array(buf.subarray(HEADER_SIZE)).buffer);
  return { header, data };
}
