export {
  readCsv,
  readFieldCsv,
  readProfilesCsv,
  readReferenceCsv,
} from "./csv.js";
export type { CsvTable, FieldGrid, Profiles, ReferencePoints } from "./csv.js";
export { contourSegments } from "./contour.js";
export type { Segment } from "./contour.js";
export { renderIsolines } from "./isolines.js";
export { renderQuiver } from "./quiver.js";
export { renderProfiles } from "./profiles.js";
export { main } from "./cli.js";
